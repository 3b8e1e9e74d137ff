#ifndef FENCHEL_REGCLOSE_HPP
#define FENCHEL_REGCLOSE_HPP

#include <string>
#include <vector>

#include "fenchel/dualmap.hpp"
#include "fenchel/extfn.hpp"
#include "fenchel/report.hpp"

namespace fenchel {

/// Finite family of test functions used for regularization.  The flags are
/// declared by the instance author and re-verified on demand; law checkers
/// treat a law as not-applicable when a required flag is false or fails
/// verification.
struct TestFamily {
    Carrier carrier;
    std::vector<ExtFn> members;
    bool all_real_valued = false;
    bool all_lower_extended = false;
    bool is_convex_cone = false;

    /// Build with the value flags computed from the members (the cone flag
    /// stays as given: it depends on closure properties, not on values).
    static TestFamily with_computed_flags(Carrier carrier, std::vector<ExtFn> members,
                                          bool convex_cone = false);

    bool check_real_valued() const;
    bool check_lower_extended() const;
    /// Sampled cone verification: for every coefficient pair from the grid
    /// (positive reals) and every member pair, the combination is again a
    /// member (pointwise equality against the list).
    bool check_convex_cone(const std::vector<Rational>& coeff_grid) const;
    /// Member-list inclusion up to pointwise equality.
    bool included_in(const TestFamily& other) const;
};

/// Tightest constant c with phi - c <= f, i.e. f*(phi): +inf when no real
/// shift produces a minorant, -inf when every real shift does.
ExtReal tightest_shift(const ExtFn& f, const ExtFn& phi);

/// F-regularization: pointwise sup of the optimally shifted minorants.
/// A member with tightest shift c* contributes phi - c* when c* is finite;
/// with c* = -inf it contributes +inf where phi > -inf and -inf where
/// phi = -inf; with c* = +inf it contributes nothing.  No contributions at
/// all give the constant -inf.  The result is always <= f.
ExtFn regularize(const ExtFn& f, const TestFamily& F);

/// Biconjugate route to the same function: pointwise sup over members of
/// phi(x) - f*(phi) with the conventions above.  Requires a real-valued
/// family (validated); equality with regularize(f, F) is asserted.
ExtFn biconjugate(const ExtFn& f, const TestFamily& F);

/// Exact sup-closure membership: f equals its own F-regularization.
bool supcl_member(const ExtFn& f, const TestFamily& F);

/// Closure laws: minorant property, monotonicity in (f, F), shift
/// equivariance (only where translating by the member keeps the family
/// inside its own constant-shift classes — for other members the identity
/// is not a theorem and the report is not-applicable), idempotence (plain
/// and nested), cone inequalities under a verified cone flag, and
/// hull-operator probes of the sup-closure (extensive / monotone /
/// idempotent / closed under sup and periodic liminf).  alpha_grid must be
/// positive reals.
std::vector<LawReport> verify_closure_laws(const ExtFn& f, const ExtFn& g, const TestFamily& F,
                                           const TestFamily& G,
                                           const std::vector<Rational>& alpha_grid,
                                           const std::string& instance);

/// Conjugate/regularization interplay: the conjugate-of-regularization
/// formula, invariance of the conjugate under regularization on certified
/// sup-closure members, the triconjugate identity, and the pullback laws
/// along a carrier map into this carrier.
std::vector<LawReport> verify_conjugate_interplay(const ExtFn& f, const ExtFn& g,
                                                  const TestFamily& F, const ExtFn& phi_lsc,
                                                  const CarrierMap& A,
                                                  const std::string& instance);

}  // namespace fenchel

#endif
