#ifndef FENCHEL_RATIONAL_HPP
#define FENCHEL_RATIONAL_HPP

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>

namespace fenchel {

/// Exact rational scalar.
///
/// Thin value wrapper around GMP's mpq_class, kept in canonical form.
/// Finite numeric data enters the system as decimal strings ("2", "-0.25",
/// "1e3") or fraction strings ("2/3") and is held exactly; all comparisons
/// and arithmetic are exact.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {}
    Rational(long num, long den);
    explicit Rational(const mpq_class& q);

    /// Parse a decimal or fraction literal.  Accepts [+-]digits[.digits]
    /// with an optional e<int> exponent, or [+-]digits/digits.
    /// Throws std::invalid_argument on malformed input or zero denominator.
    static Rational parse(const std::string& text);

    /// Render exactly: as a plain decimal when the reduced denominator is of
    /// the form 2^a 5^b, otherwise as "num/den".  parse(to_string(x)) == x.
    std::string to_string() const;

    const mpq_class& raw() const { return q_; }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational operator+(const Rational& o) const { return Rational(mpq_class(q_ + o.q_)); }
    Rational operator-(const Rational& o) const { return Rational(mpq_class(q_ - o.q_)); }
    Rational operator*(const Rational& o) const { return Rational(mpq_class(q_ * o.q_)); }
    /// Division; throws std::domain_error on division by zero.
    Rational operator/(const Rational& o) const;

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }

    bool operator==(const Rational& o) const { return q_ == o.q_; }
    std::strong_ordering operator<=>(const Rational& o) const {
        const int c = cmp(q_, o.q_);
        if (c < 0) return std::strong_ordering::less;
        if (c > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    int sign() const { return sgn(q_); }
    Rational abs() const { return Rational(mpq_class(::abs(q_))); }

private:
    mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace fenchel

#endif
