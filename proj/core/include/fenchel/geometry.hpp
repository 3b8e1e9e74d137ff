#ifndef FENCHEL_GEOMETRY_HPP
#define FENCHEL_GEOMETRY_HPP

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "fenchel/extfn.hpp"

namespace fenchel {

/// Exact element of Q + Q·pi, the scalar field of the sampled-circle
/// computations (tangent vectors are rational multiples of pi; function
/// values are rational).  Equality is structural — pi is irrational, so
/// a + b·pi = c + d·pi forces a = c, b = d — and ordering is decided by
/// directed-rounding refinement against pi, which terminates because a
/// nonzero element of Q + Q·pi is bounded away from zero.
class PiValue {
public:
    PiValue() = default;
    PiValue(Rational rational_part, Rational pi_part)
        : a_(std::move(rational_part)), b_(std::move(pi_part)) {}
    static PiValue from_rational(Rational a) { return PiValue(std::move(a), Rational(0)); }
    static PiValue pi_multiple(Rational b) { return PiValue(Rational(0), std::move(b)); }

    const Rational& rational_part() const { return a_; }
    const Rational& pi_part() const { return b_; }

    PiValue operator+(const PiValue& o) const { return PiValue(a_ + o.a_, b_ + o.b_); }
    PiValue operator-(const PiValue& o) const { return PiValue(a_ - o.a_, b_ - o.b_); }
    PiValue operator-() const { return PiValue(-a_, -b_); }

    bool operator==(const PiValue& o) const { return a_ == o.a_ && b_ == o.b_; }
    std::strong_ordering operator<=>(const PiValue& o) const;

    /// Exact rendering: "a", "pi*b", or "a + pi*b".
    std::string to_string() const;
    /// Deterministic decimal approximation (fixed-precision MPFR, 12
    /// significant digits, scientific) for plot output.
    std::string decimal() const;

private:
    Rational a_;
    Rational b_;
};

/// PiValue extended by the infinities; just enough structure for suprema of
/// conjugate terms on the circle.
struct GeoExt {
    enum class Kind { NegInf, Finite, PosInf };
    Kind kind = Kind::Finite;
    PiValue v;

    static GeoExt finite(PiValue p) { return GeoExt{Kind::Finite, std::move(p)}; }
    static GeoExt pos_inf() { return GeoExt{Kind::PosInf, {}}; }
    static GeoExt neg_inf() { return GeoExt{Kind::NegInf, {}}; }

    bool operator==(const GeoExt& o) const {
        return kind == o.kind && (kind != Kind::Finite || v == o.v);
    }
    bool less_than(const GeoExt& o) const;
    std::string to_string() const;
    std::string decimal() const;
};

/// Uniformly sampled circle: n >= 3 angles theta_i = 2*pi*i/n, carrier ids
/// "0" .. "n-1".
class CircleGrid {
public:
    explicit CircleGrid(std::size_t n);
    std::size_t n() const { return n_; }
    const Carrier& carrier() const { return carrier_; }
    /// Sample angle as an exact multiple of pi.
    PiValue angle(std::size_t i) const;

private:
    std::size_t n_;
    Carrier carrier_;
};

/// Riemannian-log wrapped difference between samples x and y, the unique
/// representative of theta_y - theta_x in (-pi, pi].
PiValue circle_log(const CircleGrid& grid, std::size_t x, std::size_t y);

/// Local conjugate of f at base sample x against the covector x_star,
/// computed twice: in the tangent chart, sup over sampled xi in (-pi, pi) of
/// x_star·xi - f(exp_x(xi)), and on the manifold, sup over non-antipodal
/// samples y of x_star·log_x(y) - f(y).  The two grids are in bijection
/// under exp_x, so the values agree exactly (even n drops the single
/// antipodal sample; odd n drops nothing).
struct ExpConjugateResult {
    GeoExt value_tangent;
    GeoExt value_manifold;
    /// Samples y attaining the manifold sup (empty iff the sup is -inf).
    std::vector<std::size_t> attainers;
};
ExpConjugateResult exp_local_conjugate(const CircleGrid& grid, const ExtFn& f, std::size_t x,
                                       const Rational& x_star);

/// Grid certificate for x minimizing f - phi: GlobalMin over all samples
/// where f - phi is defined, LocalMin over the circular neighborhood of
/// `radius` grid steps (clamped to the grid), None otherwise.  Points where
/// f - phi is +inf never certify, matching conjugate attainment exactly.
enum class Certificate { GlobalMin, LocalMin, None };
const char* to_string(Certificate c);
Certificate frechet_certificate(const CircleGrid& grid, const ExtFn& f, const ExtFn& phi,
                                std::size_t x, std::size_t radius);

/// Strictly increasing 1-D sample grid; carrier ids "0" .. "m-1".
class IntervalGrid {
public:
    explicit IntervalGrid(std::vector<Rational> points);
    const std::vector<Rational>& points() const { return points_; }
    const Carrier& carrier() const { return carrier_; }

private:
    std::vector<Rational> points_;
    Carrier carrier_;
};

enum class LegendreMethod { Brute, Fast };

/// Discrete Legendre transform: for each slope s, sup over grid points t of
/// s·t - g(t).  Brute scans every point per slope; Fast builds the lower
/// convex hull once and merges sorted slopes with a monotone argmax advance
/// (linear after sorting).  Checked builds assert the two agree.
std::vector<ExtReal> discrete_legendre_1d(const IntervalGrid& grid, const ExtFn& g,
                                          const std::vector<Rational>& slopes,
                                          LegendreMethod method);

}  // namespace fenchel

#endif
