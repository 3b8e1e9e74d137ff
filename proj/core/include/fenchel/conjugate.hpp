#ifndef FENCHEL_CONJUGATE_HPP
#define FENCHEL_CONJUGATE_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fenchel/extfn.hpp"
#include "fenchel/report.hpp"

namespace fenchel {

/// The four provably-equivalent ways to evaluate the conjugate
/// f*(phi) = sup { phi(x) - f(x) : x with the difference defined }:
///   Def        — sup over points where phi - f is defined,
///   Restricted — same sup over points with phi(x) != -inf and f(x) != +inf,
///   Shift      — inf { c real : phi <= f + c } (computed by case analysis),
///   Epigraph   — sup { phi(x) - c : (x, c) in epi f } (best level per point).
enum class Formulation { Def, Restricted, Shift, Epigraph };

struct ConjugateResult {
    ExtReal value;
    Formulation formulation = Formulation::Restricted;
    /// Maximizer indices of the restricted formulation; empty iff the
    /// restricted domain is empty (value -inf).  Always a subset of
    /// rdom(phi - f).
    std::vector<std::size_t> attainers;
};

ConjugateResult conjugate(const ExtFn& f, const ExtFn& phi, Formulation form);

/// All four formulation values side by side (they agree by theorem; callers
/// compare them when cross-checking) plus the restricted result.
struct ConjugateAll {
    std::array<ExtReal, 4> by_formulation;
    ConjugateResult restricted;
    bool all_equal() const {
        return by_formulation[0] == by_formulation[1] &&
               by_formulation[1] == by_formulation[2] &&
               by_formulation[2] == by_formulation[3];
    }
};
ConjugateAll conjugate_all(const ExtFn& f, const ExtFn& phi);

/// Shorthand for the restricted-formulation value.
ExtReal conjugate_value(const ExtFn& f, const ExtFn& phi);

/// Fenchel–Young gap f(x) + f*(phi) - phi(x), associated as
/// (f(x) + f*(phi)) - phi(x); empty when either step is undefined.
/// Nonnegative whenever defined, and zero exactly at conjugate attainers.
std::optional<ExtReal> young_gap(const ExtFn& f, const ExtFn& phi, std::size_t x);
std::optional<ExtReal> young_gap_with(const ExtReal& fstar, const ExtFn& f, const ExtFn& phi,
                                      std::size_t x);

/// Elementary and transformation laws on a fixed instance:
/// negation symmetries, self-conjugacy, the order/0-level equivalence, the
/// -inf characterization, positive scaling with shifts (needs alpha > 0,
/// validated), the test-function shift rule and sum subadditivity (their
/// domain hypotheses are checked; unmet hypotheses yield not-applicable).
std::vector<LawReport> verify_algebraic_laws(const ExtFn& f, const ExtFn& g, const ExtFn& phi,
                                             const ExtFn& psi, const Rational& alpha,
                                             const Rational& beta, const std::string& instance);

/// Continuity-flavoured laws against a finite test family:
/// argument monotonicity, the sup-norm Lipschitz bound, convexity of
/// phi -> f*(phi) on the lambda grid, exact sup exchange, and inf/liminf
/// bounds with epsilon certificates taken from `shifts` (the member list is
/// read as one period of a periodic sequence for the liminf forms).
std::vector<LawReport> verify_analytic_laws(const ExtFn& f, const std::vector<ExtFn>& family,
                                            const std::vector<Rational>& lambda_grid,
                                            const std::vector<Rational>& shifts,
                                            const std::string& instance);

/// Fenchel–Young suite over a family: gap sign, gap-zero/attainer
/// equivalence, and dual-side attainment restricted to the supplied family.
std::vector<LawReport> verify_young_laws(const ExtFn& f, const std::vector<ExtFn>& family,
                                         const std::string& instance);

}  // namespace fenchel

#endif
