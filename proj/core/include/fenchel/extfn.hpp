#ifndef FENCHEL_EXTFN_HPP
#define FENCHEL_EXTFN_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "fenchel/carrier.hpp"
#include "fenchel/extreal.hpp"

namespace fenchel {

/// Extended-real-valued function on a finite carrier, stored densely in
/// carrier enumeration order.
class ExtFn {
public:
    ExtFn(Carrier carrier, std::vector<ExtReal> values);

    /// Constant function.
    static ExtFn constant(const Carrier& carrier, const ExtReal& v);

    const Carrier& carrier() const { return carrier_; }
    std::size_t size() const { return values_.size(); }
    const ExtReal& at(std::size_t i) const { return values_.at(i); }
    const ExtReal& at(const std::string& id) const { return values_.at(carrier_.index_of(id)); }
    const std::vector<ExtReal>& values() const { return values_; }

    /// No +inf or -inf values.
    bool real_valued() const;
    /// No -inf values (maps into R ∪ {+inf}).
    bool lower_extended() const;

    bool operator==(const ExtFn& o) const {
        return carrier_ == o.carrier_ && values_ == o.values_;
    }

private:
    Carrier carrier_;
    std::vector<ExtReal> values_;
};

/// Domains of the pointwise sum f + g over a shared carrier:
/// `dom`  — indices where f(x) + g(x) is defined,
/// `rdom` — indices where additionally neither summand is -inf (so rdom ⊆ dom).
struct SumDomains {
    std::vector<std::size_t> dom;
    std::vector<std::size_t> rdom;
};
SumDomains sum_domains(const ExtFn& f, const ExtFn& g);

/// sup |f| over the carrier; requires a real-valued f (throws otherwise).
/// Carriers are nonempty, so the result is a finite nonnegative rational.
Rational sup_norm(const ExtFn& f);

/// Pointwise partial order: f(x) <= g(x) everywhere.
bool leq_fn(const ExtFn& f, const ExtFn& g);

/// Pointwise sup/inf over a family on the given carrier.
/// The empty family yields the constant -inf (sup) or +inf (inf).
ExtFn pointwise_extremum(const Carrier& carrier, const std::vector<ExtFn>& family,
                         ExtremumMode mode);

/// 0 on the subset, +inf elsewhere.  Subset ids must belong to the carrier.
ExtFn indicator_fn(const Carrier& carrier, const std::vector<std::string>& subset);

/// Sampled epigraph: all pairs (point, c) with c in level_grid and f(point) <= c.
std::vector<std::pair<std::string, Rational>> epigraph_fn(
    const ExtFn& f, const std::vector<Rational>& level_grid);

// -- pointwise arithmetic helpers ------------------------------------------

/// alpha·f for nonzero alpha.
ExtFn scale_fn(const Rational& alpha, const ExtFn& f);
inline ExtFn negate_fn(const ExtFn& f) { return scale_fn(Rational(-1), f); }
/// f + c for a finite shift c (always defined).
ExtFn add_const_fn(const ExtFn& f, const Rational& c);
/// f + g when defined at every point, empty otherwise.
std::optional<ExtFn> add_fn_checked(const ExtFn& f, const ExtFn& g);
/// Pointwise max / min; always defined.
ExtFn max_fn(const ExtFn& f, const ExtFn& g);
ExtFn min_fn(const ExtFn& f, const ExtFn& g);

}  // namespace fenchel

#endif
