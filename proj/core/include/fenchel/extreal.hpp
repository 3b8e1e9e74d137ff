#ifndef FENCHEL_EXTREAL_HPP
#define FENCHEL_EXTREAL_HPP

#include <compare>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "fenchel/rational.hpp"

namespace fenchel {

/// Extended real scalar: a finite exact rational, or one of the two
/// infinities.  Partial sums that would contract opposite infinities are
/// reported as an empty optional ("undefined") rather than thrown: the
/// undefined outcome is ordinary data that law checkers inspect.
class ExtReal {
public:
    enum class Kind { NegInf, Finite, PosInf };

    ExtReal() : kind_(Kind::Finite), value_() {}
    ExtReal(Rational v) : kind_(Kind::Finite), value_(std::move(v)) {}
    ExtReal(long v) : kind_(Kind::Finite), value_(v) {}

    static ExtReal pos_inf() { return ExtReal(Kind::PosInf); }
    static ExtReal neg_inf() { return ExtReal(Kind::NegInf); }
    static ExtReal finite(Rational v) { return ExtReal(std::move(v)); }

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::Finite; }
    bool is_pos_inf() const { return kind_ == Kind::PosInf; }
    bool is_neg_inf() const { return kind_ == Kind::NegInf; }

    /// Finite payload; throws std::logic_error when infinite.
    const Rational& value() const;

    /// "inf", "-inf", or the exact rational literal.
    std::string to_string() const;

    /// Parse "inf" / "-inf" / rational literal.  "undef" is an output-only
    /// token and is rejected here.
    static ExtReal parse(const std::string& text);

    bool operator==(const ExtReal& o) const;
    std::strong_ordering operator<=>(const ExtReal& o) const;

private:
    explicit ExtReal(Kind k) : kind_(k), value_() {}

    Kind kind_;
    Rational value_;
};

/// a + b when defined; empty on (+inf) + (-inf) in either order.
std::optional<ExtReal> add_checked(const ExtReal& a, const ExtReal& b);

/// a - b := a + (-1)·b when defined.
std::optional<ExtReal> sub_checked(const ExtReal& a, const ExtReal& b);

/// alpha · a for nonzero rational alpha (total once alpha != 0; a zero alpha
/// would meet 0·(±inf), which has no value here — rejected with
/// std::invalid_argument).
ExtReal scale(const Rational& alpha, const ExtReal& a);

inline ExtReal negate(const ExtReal& a) { return scale(Rational(-1), a); }

enum class ExtremumMode { Sup, Inf };

/// Supremum or infimum of finitely many extended reals.
/// Empty input follows the lattice conventions: sup {} = -inf, inf {} = +inf.
ExtReal extremum(std::span<const ExtReal> values, ExtremumMode mode);

inline ExtReal ext_max(const ExtReal& a, const ExtReal& b) { return a >= b ? a : b; }
inline ExtReal ext_min(const ExtReal& a, const ExtReal& b) { return a <= b ? a : b; }

/// Absolute value.
ExtReal ext_abs(const ExtReal& a);

/// Render an optional ExtReal, using "undef" for the empty case.
std::string to_string(const std::optional<ExtReal>& v);

std::ostream& operator<<(std::ostream& os, const ExtReal& v);

}  // namespace fenchel

#endif
