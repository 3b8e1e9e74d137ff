#include "fenchel/geometry.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>

namespace fenchel {

namespace {

// Sign of a + b*pi for rational a, b, not both zero, by interval refinement
// with directed rounding.  Terminates: the value is nonzero (pi irrational),
// so some precision separates the enclosure from zero.
int sign_a_plus_b_pi(const Rational& a, const Rational& b) {
    if (b.sign() == 0) return a.sign();
    if (a.sign() == 0) return b.sign();
    for (mpfr_prec_t prec = 128; prec <= (mpfr_prec_t{1} << 22); prec *= 2) {
        mpfr_t a_lo, a_hi, b_r, pi_lo, pi_hi, prod_lo, prod_hi, lo, hi;
        mpfr_inits2(prec, a_lo, a_hi, b_r, pi_lo, pi_hi, prod_lo, prod_hi, lo, hi,
                    static_cast<mpfr_ptr>(nullptr));
        mpfr_set_q(a_lo, a.raw().get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(a_hi, a.raw().get_mpq_t(), MPFR_RNDU);
        mpfr_const_pi(pi_lo, MPFR_RNDD);
        mpfr_const_pi(pi_hi, MPFR_RNDU);
        if (b.sign() > 0) {
            mpfr_set_q(b_r, b.raw().get_mpq_t(), MPFR_RNDD);
            mpfr_mul(prod_lo, b_r, pi_lo, MPFR_RNDD);
            mpfr_set_q(b_r, b.raw().get_mpq_t(), MPFR_RNDU);
            mpfr_mul(prod_hi, b_r, pi_hi, MPFR_RNDU);
        } else {
            mpfr_set_q(b_r, b.raw().get_mpq_t(), MPFR_RNDD);
            mpfr_mul(prod_lo, b_r, pi_hi, MPFR_RNDD);
            mpfr_set_q(b_r, b.raw().get_mpq_t(), MPFR_RNDU);
            mpfr_mul(prod_hi, b_r, pi_lo, MPFR_RNDU);
        }
        mpfr_add(lo, a_lo, prod_lo, MPFR_RNDD);
        mpfr_add(hi, a_hi, prod_hi, MPFR_RNDU);
        const int slo = mpfr_sgn(lo), shi = mpfr_sgn(hi);
        mpfr_clears(a_lo, a_hi, b_r, pi_lo, pi_hi, prod_lo, prod_hi, lo, hi,
                    static_cast<mpfr_ptr>(nullptr));
        if (slo > 0) return 1;
        if (shi < 0) return -1;
    }
    throw std::logic_error("sign_a_plus_b_pi: refinement failed to separate from zero");
}

}  // namespace

std::strong_ordering PiValue::operator<=>(const PiValue& o) const {
    if (*this == o) return std::strong_ordering::equal;
    const int s = sign_a_plus_b_pi(a_ - o.a_, b_ - o.b_);
    return s < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::string PiValue::to_string() const {
    if (b_.sign() == 0) return a_.to_string();
    const std::string pi_term = "pi*" + b_.to_string();
    if (a_.sign() == 0) return pi_term;
    return a_.to_string() + " + " + pi_term;
}

std::string PiValue::decimal() const {
    mpfr_t pi, acc, term;
    mpfr_inits2(256, pi, acc, term, static_cast<mpfr_ptr>(nullptr));
    mpfr_const_pi(pi, MPFR_RNDN);
    mpfr_set_q(term, b_.raw().get_mpq_t(), MPFR_RNDN);
    mpfr_mul(acc, term, pi, MPFR_RNDN);
    mpfr_set_q(term, a_.raw().get_mpq_t(), MPFR_RNDN);
    mpfr_add(acc, acc, term, MPFR_RNDN);
    char buf[64];
    mpfr_snprintf(buf, sizeof buf, "%.12Re", acc);
    mpfr_clears(pi, acc, term, static_cast<mpfr_ptr>(nullptr));
    return buf;
}

bool GeoExt::less_than(const GeoExt& o) const {
    auto rank = [](Kind k) { return k == Kind::NegInf ? 0 : (k == Kind::Finite ? 1 : 2); };
    if (kind != o.kind) return rank(kind) < rank(o.kind);
    if (kind != Kind::Finite) return false;
    return v < o.v;
}

std::string GeoExt::to_string() const {
    switch (kind) {
        case Kind::PosInf: return "inf";
        case Kind::NegInf: return "-inf";
        case Kind::Finite: return v.to_string();
    }
    return {};
}

std::string GeoExt::decimal() const {
    switch (kind) {
        case Kind::PosInf: return "inf";
        case Kind::NegInf: return "-inf";
        case Kind::Finite: return v.decimal();
    }
    return {};
}

namespace {

Carrier index_carrier(std::size_t m) {
    std::vector<std::string> ids;
    ids.reserve(m);
    for (std::size_t i = 0; i < m; ++i) ids.push_back(std::to_string(i));
    return Carrier(std::move(ids));
}

}  // namespace

CircleGrid::CircleGrid(std::size_t n) : n_(n), carrier_(index_carrier(n >= 3 ? n : 3)) {
    if (n < 3) throw std::invalid_argument("CircleGrid: need at least 3 samples");
}

PiValue CircleGrid::angle(std::size_t i) const {
    if (i >= n_) throw std::invalid_argument("CircleGrid: sample index out of range");
    return PiValue::pi_multiple(Rational(2 * static_cast<long>(i), static_cast<long>(n_)));
}

PiValue circle_log(const CircleGrid& grid, std::size_t x, std::size_t y) {
    const long n = static_cast<long>(grid.n());
    if (x >= grid.n() || y >= grid.n())
        throw std::invalid_argument("circle_log: sample index out of range");
    long k = (static_cast<long>(y) - static_cast<long>(x)) % n;
    if (k < 0) k += n;
    if (2 * k > n) k -= n;  // principal branch (-pi, pi]; 2k == n stays at +pi
    return PiValue::pi_multiple(Rational(2 * k, n));
}

ExpConjugateResult exp_local_conjugate(const CircleGrid& grid, const ExtFn& f, std::size_t x,
                                       const Rational& x_star) {
    require_same_carrier(grid.carrier(), f.carrier(), "exp_local_conjugate");
    const long n = static_cast<long>(grid.n());
    if (x >= grid.n())
        throw std::invalid_argument("exp_local_conjugate: base sample out of range");

    auto term_at = [&](long k, std::size_t y) -> GeoExt {
        // x_star * xi - f(y) with xi = 2*pi*k/n.
        const ExtReal& fv = f.at(y);
        if (fv.is_pos_inf()) return GeoExt::neg_inf();
        if (fv.is_neg_inf()) return GeoExt::pos_inf();
        return GeoExt::finite(
            PiValue(-fv.value(), x_star * Rational(2 * k, n)));
    };

    const bool even = (n % 2 == 0);
    const long kmax = even ? n / 2 - 1 : (n - 1) / 2;

    // Tangent chart: iterate sampled xi over the open ball (-pi, pi).
    GeoExt tangent = GeoExt::neg_inf();
    for (long k = -kmax; k <= kmax; ++k) {
        const std::size_t y =
            static_cast<std::size_t>(((static_cast<long>(x) + k) % n + n) % n);
        const GeoExt t = term_at(k, y);
        if (tangent.less_than(t)) tangent = t;
    }

    // Manifold: iterate samples, skipping the antipode on even grids.
    GeoExt manifold = GeoExt::neg_inf();
    std::vector<GeoExt> terms(grid.n(), GeoExt::neg_inf());
    const std::size_t antipode =
        even ? static_cast<std::size_t>((static_cast<long>(x) + n / 2) % n) : grid.n();
    for (std::size_t y = 0; y < grid.n(); ++y) {
        if (y == antipode) continue;
        const PiValue xi = circle_log(grid, x, y);
        const long k = (xi.pi_part() * Rational(n, 2)).raw().get_num().get_si();
        const GeoExt t = term_at(k, y);
        terms[y] = t;
        if (manifold.less_than(t)) manifold = t;
    }

    ExpConjugateResult res{tangent, manifold, {}};
    if (!(manifold == GeoExt::neg_inf()))
        for (std::size_t y = 0; y < grid.n(); ++y)
            if (y != antipode && terms[y] == manifold) res.attainers.push_back(y);
    return res;
}

const char* to_string(Certificate c) {
    switch (c) {
        case Certificate::GlobalMin: return "GLOBAL_MIN";
        case Certificate::LocalMin: return "LOCAL_MIN";
        case Certificate::None: return "NONE";
    }
    return "?";
}

Certificate frechet_certificate(const CircleGrid& grid, const ExtFn& f, const ExtFn& phi,
                                std::size_t x, std::size_t radius) {
    require_same_carrier(grid.carrier(), f.carrier(), "frechet_certificate");
    require_same_carrier(grid.carrier(), phi.carrier(), "frechet_certificate");
    const std::size_t n = grid.n();
    if (x >= n) throw std::invalid_argument("frechet_certificate: sample out of range");
    if (radius == 0) throw std::invalid_argument("frechet_certificate: radius must be positive");
    if (radius > n / 2) radius = n / 2;  // clamp to the grid extent

    const auto h_at = [&](std::size_t i) { return sub_checked(f.at(i), phi.at(i)); };
    const auto hx = h_at(x);
    // A certifying point needs a defined difference below +inf (mirroring
    // conjugate attainment, which excludes -inf terms of phi - f).
    if (!hx || hx->is_pos_inf()) return Certificate::None;

    bool global = true;
    for (std::size_t y = 0; y < n; ++y) {
        const auto hy = h_at(y);
        if (hy && !(*hx <= *hy)) global = false;
    }
    if (global) return Certificate::GlobalMin;

    bool local = true;
    for (std::size_t d = 1; d <= radius; ++d) {
        for (long sgn : {-1L, 1L}) {
            const std::size_t y = static_cast<std::size_t>(
                ((static_cast<long>(x) + sgn * static_cast<long>(d)) % static_cast<long>(n) +
                 static_cast<long>(n)) %
                static_cast<long>(n));
            const auto hy = h_at(y);
            if (hy && !(*hx <= *hy)) local = false;
        }
    }
    return local ? Certificate::LocalMin : Certificate::None;
}

IntervalGrid::IntervalGrid(std::vector<Rational> points)
    : points_(std::move(points)), carrier_(index_carrier(points_.empty() ? 1 : points_.size())) {
    if (points_.empty()) throw std::invalid_argument("IntervalGrid: empty point list");
    for (std::size_t i = 1; i < points_.size(); ++i)
        if (!(points_[i - 1] < points_[i]))
            throw std::invalid_argument("IntervalGrid: points must be strictly increasing");
}

namespace {

ExtReal legendre_term(const Rational& s, const Rational& t, const Rational& g) {
    return ExtReal(s * t - g);
}

std::vector<ExtReal> legendre_brute(const IntervalGrid& grid, const ExtFn& g,
                                    const std::vector<Rational>& slopes) {
    std::vector<ExtReal> out;
    out.reserve(slopes.size());
    for (const auto& s : slopes) {
        std::vector<ExtReal> terms;
        for (std::size_t i = 0; i < grid.points().size(); ++i) {
            const ExtReal& gv = g.at(i);
            if (gv.is_pos_inf()) continue;
            if (gv.is_neg_inf()) {
                terms.push_back(ExtReal::pos_inf());
                continue;
            }
            terms.push_back(legendre_term(s, grid.points()[i], gv.value()));
        }
        out.push_back(extremum(terms, ExtremumMode::Sup));
    }
    return out;
}

std::vector<ExtReal> legendre_fast(const IntervalGrid& grid, const ExtFn& g,
                                   const std::vector<Rational>& slopes) {
    const std::size_t m = grid.points().size();
    bool any_neg = false;
    std::vector<std::size_t> finite;
    for (std::size_t i = 0; i < m; ++i) {
        if (g.at(i).is_neg_inf()) any_neg = true;
        if (g.at(i).is_finite()) finite.push_back(i);
    }
    if (any_neg) return std::vector<ExtReal>(slopes.size(), ExtReal::pos_inf());
    if (finite.empty()) return std::vector<ExtReal>(slopes.size(), ExtReal::neg_inf());

    // Lower convex hull of (t_i, g_i) over the finite samples; the sup of
    // s·t - g(t) is attained on hull vertices.
    const auto cross = [&](std::size_t o, std::size_t a, std::size_t b) {
        const Rational& to = grid.points()[o];
        const Rational ga = g.at(a).value() - g.at(o).value();
        const Rational gb = g.at(b).value() - g.at(o).value();
        return (grid.points()[a] - to) * gb - ga * (grid.points()[b] - to);
    };
    std::vector<std::size_t> hull;
    for (auto i : finite) {
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), i).sign() <= 0)
            hull.pop_back();
        hull.push_back(i);
    }

    // Monotone argmax advance over slopes in increasing order.
    std::vector<std::size_t> order(slopes.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (slopes[a] != slopes[b]) return slopes[a] < slopes[b];
        return a < b;
    });
    std::vector<ExtReal> out(slopes.size());
    std::size_t j = 0;
    for (auto si : order) {
        const Rational& s = slopes[si];
        auto val = [&](std::size_t h) {
            return legendre_term(s, grid.points()[hull[h]], g.at(hull[h]).value());
        };
        while (j + 1 < hull.size() && val(j + 1) >= val(j)) ++j;
        out[si] = val(j);
    }
    return out;
}

}  // namespace

std::vector<ExtReal> discrete_legendre_1d(const IntervalGrid& grid, const ExtFn& g,
                                          const std::vector<Rational>& slopes,
                                          LegendreMethod method) {
    require_same_carrier(grid.carrier(), g.carrier(), "discrete_legendre_1d");
    if (method == LegendreMethod::Brute) return legendre_brute(grid, g, slopes);
    std::vector<ExtReal> fast = legendre_fast(grid, g, slopes);
    assert(fast == legendre_brute(grid, g, slopes));
    return fast;
}

}  // namespace fenchel
