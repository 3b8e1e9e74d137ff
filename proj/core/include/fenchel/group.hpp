#ifndef FENCHEL_GROUP_HPP
#define FENCHEL_GROUP_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fenchel/extfn.hpp"
#include "fenchel/report.hpp"

namespace fenchel {

/// A finite symmetric window inside one of two infinite abelian groups:
///   Zd(d, radius)        — the box {-radius..radius}^d inside (Z^d, +),
///   Dyadic(depth, bound) — dyadic rationals m/2^depth with |m/2^depth| <=
///                          bound inside (dyadic rationals, +).
/// Functions on the group follow the outside-window-is-+inf convention;
/// operations whose correctness would need values outside the window raise
/// WindowOverflowError instead of silently truncating.
///
/// The homomorphism basis into (R, +) is supplied by the kind: coordinate
/// projections for Zd, the identity embedding for Dyadic.
class GroupSpec {
public:
    static GroupSpec zd(std::size_t d, long radius);
    static GroupSpec dyadic(unsigned depth, const Rational& bound);

    enum class Kind { Zd, Dyadic };
    Kind kind() const { return kind_; }
    bool is_dyadic() const { return kind_ == Kind::Dyadic; }

    std::size_t size() const { return elements_.size(); }
    const Carrier& carrier() const { return carrier_; }
    const std::vector<Rational>& element(std::size_t i) const { return elements_.at(i); }
    std::size_t identity() const { return identity_; }

    /// Index of x_i · x_j when the product lies in the window.
    std::optional<std::size_t> compose(std::size_t i, std::size_t j) const;
    /// Inverse; windows are symmetric, so always present.
    std::size_t inverse(std::size_t i) const;
    /// Index of the element with the given coordinates, if in the window.
    std::optional<std::size_t> find(const std::vector<Rational>& coords) const;

    std::size_t hom_count() const { return dim_; }
    /// Value of the h-th basis homomorphism at element i.
    const Rational& hom_value(std::size_t h, std::size_t i) const {
        return elements_.at(i).at(h);
    }

private:
    GroupSpec() = default;
    void finish();  // builds keys, carrier, index, identity, inverses

    Kind kind_ = Kind::Zd;
    std::size_t dim_ = 1;
    std::vector<std::vector<Rational>> elements_;
    std::vector<std::size_t> inverse_;
    std::map<std::string, std::size_t> index_;
    std::size_t identity_ = 0;
    Carrier carrier_{std::vector<std::string>{"0"}};
};

/// Element key as used in carriers and instance files: coordinate values
/// joined with ','.
std::string element_key(const std::vector<Rational>& coords);

struct WindowOverflowError : std::runtime_error {
    explicit WindowOverflowError(const std::string& what) : std::runtime_error(what) {}
};

/// Infimal convolution (f □ g)(x) = inf over y of f(x·y^-1) + g(y), with
/// undefined sums skipped and an empty feasible set giving +inf.  Validates
/// that products of effective-domain elements stay in the window (otherwise
/// the window would misrepresent f □ g outside itself) and asserts that the
/// symmetric evaluation order inf over z of f(z) + g(z^-1·x) agrees.
ExtFn inf_convolution(const GroupSpec& spec, const ExtFn& f, const ExtFn& g);

/// Both evaluation orders, for cross-checking reports.
struct InfConvolutionOrders {
    ExtFn first;    // inf over y of f(x·y^-1) + g(y)
    ExtFn second;   // inf over z of f(z) + g(z^-1·x)
};
InfConvolutionOrders inf_convolution_orders(const GroupSpec& spec, const ExtFn& f,
                                            const ExtFn& g);

/// Conjugation of an infimal convolution against a homomorphism combination
/// phi = sum_h coeffs[h]·hom_h: checks (f □ g)*(phi) = f*(phi) + g*(phi)
/// (needs lower-extended f, g; not-applicable otherwise) and that the two
/// evaluation orders of f □ g agree.
std::vector<LawReport> check_infconv_formula(const GroupSpec& spec, const ExtFn& f,
                                             const ExtFn& g,
                                             const std::vector<Rational>& coeffs,
                                             const std::string& instance);

/// Mid-point convexity transfer along the embedding delta(x) =
/// (hom_1(x), .., hom_d(x)).  psi must coincide with f_on_dual read through
/// delta (validated).  Forward: if f_on_dual is mid-point convex on embedded
/// pairs whose midpoint is embedded, then psi(x) <= (psi(y·x) + psi(y^-1·x))/2
/// on all in-window triples.  Converse (meaningful on Dyadic windows): if psi
/// satisfies the group inequality on all in-window triples, then f_on_dual is
/// mid-point convex on pairs (u, v) with both (u+v)/2 and (u-v)/2 embedded.
std::vector<LawReport> midpoint_checks(const GroupSpec& spec, const ExtFn& psi,
                                       const std::map<std::string, ExtReal>& f_on_dual,
                                       const std::string& instance);

}  // namespace fenchel

#endif
