#include "fenchel/group.hpp"

#include <cassert>

#include "fenchel/conjugate.hpp"

namespace fenchel {

std::string element_key(const std::vector<Rational>& coords) {
    std::string key;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i) key += ',';
        key += coords[i].to_string();
    }
    return key;
}

GroupSpec GroupSpec::zd(std::size_t d, long radius) {
    if (d < 1 || d > 3) throw std::invalid_argument("GroupSpec: Zd dimension must be 1..3");
    if (radius < 1 || radius > 40)
        throw std::invalid_argument("GroupSpec: Zd radius must be 1..40");
    std::size_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= static_cast<std::size_t>(2 * radius + 1);
    if (count > 25000) throw std::invalid_argument("GroupSpec: Zd window too large");

    GroupSpec s;
    s.kind_ = Kind::Zd;
    s.dim_ = d;
    std::vector<long> coord(d, -radius);
    while (true) {
        std::vector<Rational> e;
        e.reserve(d);
        for (long c : coord) e.emplace_back(c);
        s.elements_.push_back(std::move(e));
        std::size_t pos = d;
        while (pos > 0) {
            if (coord[pos - 1] < radius) {
                ++coord[pos - 1];
                break;
            }
            coord[pos - 1] = -radius;
            --pos;
        }
        if (pos == 0) break;
    }
    s.finish();
    return s;
}

GroupSpec GroupSpec::dyadic(unsigned depth, const Rational& bound) {
    if (depth > 12) throw std::invalid_argument("GroupSpec: dyadic depth must be <= 12");
    if (bound.sign() <= 0) throw std::invalid_argument("GroupSpec: dyadic bound must be positive");
    // Elements m / 2^depth with |m / 2^depth| <= bound.
    const Rational step(1, 1L << depth);
    long m_max = 0;
    while (Rational(m_max + 1) * step <= bound) ++m_max;
    if (m_max > 10000) throw std::invalid_argument("GroupSpec: dyadic window too large");

    GroupSpec s;
    s.kind_ = Kind::Dyadic;
    s.dim_ = 1;
    for (long m = -m_max; m <= m_max; ++m)
        s.elements_.push_back({Rational(m) * step});
    s.finish();
    return s;
}

void GroupSpec::finish() {
    std::vector<std::string> keys;
    keys.reserve(elements_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        keys.push_back(element_key(elements_[i]));
        index_.emplace(keys.back(), i);
    }
    carrier_ = Carrier(keys);
    const std::vector<Rational> zero(dim_, Rational(0));
    auto id = find(zero);
    assert(id);  // symmetric windows always contain the identity
    identity_ = *id;
    inverse_.resize(elements_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        std::vector<Rational> neg;
        neg.reserve(dim_);
        for (const auto& c : elements_[i]) neg.push_back(-c);
        auto inv = find(neg);
        assert(inv);  // symmetric window
        inverse_[i] = *inv;
    }
}

std::optional<std::size_t> GroupSpec::compose(std::size_t i, std::size_t j) const {
    std::vector<Rational> sum;
    sum.reserve(dim_);
    for (std::size_t h = 0; h < dim_; ++h) sum.push_back(elements_.at(i)[h] + elements_.at(j)[h]);
    return find(sum);
}

std::size_t GroupSpec::inverse(std::size_t i) const { return inverse_.at(i); }

std::optional<std::size_t> GroupSpec::find(const std::vector<Rational>& coords) const {
    auto it = index_.find(element_key(coords));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

namespace {

std::vector<std::size_t> effective_domain(const ExtFn& f) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (!f.at(i).is_pos_inf()) out.push_back(i);
    return out;
}

}  // namespace

InfConvolutionOrders inf_convolution_orders(const GroupSpec& spec, const ExtFn& f,
                                            const ExtFn& g) {
    require_same_carrier(spec.carrier(), f.carrier(), "inf_convolution");
    require_same_carrier(spec.carrier(), g.carrier(), "inf_convolution");

    // The convolution is +inf outside the window only if no product of
    // effective-domain elements escapes it; otherwise the window would
    // misrepresent f □ g and every conjugate of it.
    for (auto a : effective_domain(f))
        for (auto b : effective_domain(g))
            if (!spec.compose(a, b))
                throw WindowOverflowError(
                    "inf_convolution: product of effective-domain elements '" +
                    spec.carrier().id(a) + "' * '" + spec.carrier().id(b) +
                    "' leaves the window");

    const std::size_t n = spec.size();
    std::vector<ExtReal> first_vals, second_vals;
    first_vals.reserve(n);
    second_vals.reserve(n);
    for (std::size_t x = 0; x < n; ++x) {
        std::vector<ExtReal> terms;
        for (std::size_t y = 0; y < n; ++y) {
            const auto z = spec.compose(x, spec.inverse(y));
            if (!z) continue;  // f is +inf outside the window
            if (auto t = add_checked(f.at(*z), g.at(y))) terms.push_back(*t);
        }
        first_vals.push_back(extremum(terms, ExtremumMode::Inf));

        terms.clear();
        for (std::size_t z = 0; z < n; ++z) {
            const auto y = spec.compose(spec.inverse(z), x);
            if (!y) continue;  // g is +inf outside the window
            if (auto t = add_checked(f.at(z), g.at(*y))) terms.push_back(*t);
        }
        second_vals.push_back(extremum(terms, ExtremumMode::Inf));
    }
    return InfConvolutionOrders{ExtFn(spec.carrier(), std::move(first_vals)),
                                ExtFn(spec.carrier(), std::move(second_vals))};
}

ExtFn inf_convolution(const GroupSpec& spec, const ExtFn& f, const ExtFn& g) {
    InfConvolutionOrders orders = inf_convolution_orders(spec, f, g);
    if (!(orders.first == orders.second))
        throw std::logic_error("inf_convolution: evaluation orders disagree");
    return orders.first;
}

std::vector<LawReport> check_infconv_formula(const GroupSpec& spec, const ExtFn& f,
                                             const ExtFn& g,
                                             const std::vector<Rational>& coeffs,
                                             const std::string& instance) {
    if (coeffs.size() != spec.hom_count())
        throw std::invalid_argument(
            "check_infconv_formula: coefficient count does not match the hom basis");

    std::vector<ExtReal> phi_vals;
    phi_vals.reserve(spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i) {
        Rational v(0);
        for (std::size_t h = 0; h < spec.hom_count(); ++h) v += coeffs[h] * spec.hom_value(h, i);
        phi_vals.emplace_back(v);
    }
    const ExtFn phi(spec.carrier(), std::move(phi_vals));

    std::vector<LawReport> out;
    const InfConvolutionOrders orders = inf_convolution_orders(spec, f, g);
    out.push_back(
        equiv_report("group.infconv-orders", instance, orders.first == orders.second, true));

    if (!f.lower_extended() || !g.lower_extended()) {
        out.push_back(na_report("group.infconv-formula", instance,
                                "arguments not lower-extended"));
        return out;
    }
    const auto rhs = add_checked(conjugate_value(f, phi), conjugate_value(g, phi));
    if (!rhs) {
        out.push_back(LawReport{"group.infconv-formula", instance, Relation::Eq, ExtReal(0),
                                ExtReal(0), Verdict::Fail,
                                "f*(phi) + g*(phi) undefined despite hypotheses"});
        return out;
    }
    out.push_back(checked_report("group.infconv-formula", instance, Relation::Eq,
                                 conjugate_value(orders.first, phi), *rhs));
    return out;
}

std::vector<LawReport> midpoint_checks(const GroupSpec& spec, const ExtFn& psi,
                                       const std::map<std::string, ExtReal>& f_on_dual,
                                       const std::string& instance) {
    require_same_carrier(spec.carrier(), psi.carrier(), "midpoint_checks");
    if (f_on_dual.size() != spec.size())
        throw std::invalid_argument(
            "midpoint_checks: f_on_dual must cover exactly the embedded window");
    std::vector<ExtReal> f_dual;
    f_dual.reserve(spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i) {
        auto it = f_on_dual.find(spec.carrier().id(i));
        if (it == f_on_dual.end())
            throw std::invalid_argument("midpoint_checks: missing embedded point '" +
                                        spec.carrier().id(i) + "'");
        f_dual.push_back(it->second);
    }
    // psi must be f_on_dual read through the embedding delta (which is the
    // identity on window coordinates for both kinds).
    for (std::size_t i = 0; i < spec.size(); ++i)
        if (!(psi.at(i) == f_dual[i]))
            throw std::invalid_argument(
                "midpoint_checks: psi differs from f_on_dual through the embedding at '" +
                spec.carrier().id(i) + "'");

    const Rational half(1, 2);
    const auto halve_sum = [&](const ExtReal& a, const ExtReal& b) {
        return add_checked(scale(half, a), scale(half, b));
    };
    const auto midpoint = [&](std::size_t i, std::size_t j) {
        std::vector<Rational> avg;
        avg.reserve(spec.hom_count());
        for (std::size_t h = 0; h < spec.hom_count(); ++h)
            avg.push_back((spec.element(i)[h] + spec.element(j)[h]) * half);
        return spec.find(avg);
    };
    const auto half_difference = [&](std::size_t i, std::size_t j) {
        std::vector<Rational> hd;
        hd.reserve(spec.hom_count());
        for (std::size_t h = 0; h < spec.hom_count(); ++h)
            hd.push_back((spec.element(i)[h] - spec.element(j)[h]) * half);
        return spec.find(hd);
    };

    bool f_lower = true;
    for (const auto& v : f_dual)
        if (v.is_neg_inf()) f_lower = false;

    // Sampled mid-point convexity of f on embedded pairs with embedded
    // midpoint.
    bool f_midpoint_convex = true;
    if (f_lower)
        for (std::size_t i = 0; i < spec.size() && f_midpoint_convex; ++i)
            for (std::size_t j = i; j < spec.size() && f_midpoint_convex; ++j) {
                const auto mid = midpoint(i, j);
                if (!mid) continue;
                const auto rhs = halve_sum(f_dual[i], f_dual[j]);
                assert(rhs);  // no -inf values here
                if (!(f_dual[*mid] <= *rhs)) f_midpoint_convex = false;
            }

    // Group-side inequality psi(x) <= (psi(y·x) + psi(y^-1·x))/2 on in-window
    // triples.
    const auto group_convex_holds = [&]() {
        for (std::size_t x = 0; x < spec.size(); ++x)
            for (std::size_t y = 0; y < spec.size(); ++y) {
                const auto yx = spec.compose(y, x);
                const auto yinvx = spec.compose(spec.inverse(y), x);
                if (!yx || !yinvx) continue;
                const auto rhs = halve_sum(psi.at(*yx), psi.at(*yinvx));
                if (!rhs) continue;  // opposite infinities: no constraint
                if (!(psi.at(x) <= *rhs)) return false;
            }
        return true;
    };

    std::vector<LawReport> out;

    if (!f_lower)
        out.push_back(na_report("group.midpoint-forward", instance,
                                "f_on_dual not lower-extended"));
    else if (!f_midpoint_convex)
        out.push_back(na_report("group.midpoint-forward", instance,
                                "f_on_dual not mid-point convex on sampled pairs"));
    else
        out.push_back(equiv_report("group.midpoint-forward", instance, group_convex_holds(),
                                   true));

    if (!f_lower) {
        out.push_back(na_report("group.midpoint-converse", instance,
                                "f_on_dual not lower-extended"));
    } else if (!group_convex_holds()) {
        out.push_back(na_report("group.midpoint-converse", instance,
                                "psi not group-convex on sampled triples"));
    } else {
        bool ok = true;
        for (std::size_t i = 0; i < spec.size() && ok; ++i)
            for (std::size_t j = i; j < spec.size() && ok; ++j) {
                const auto mid = midpoint(i, j);
                if (!mid || !half_difference(i, j)) continue;
                const auto rhs = halve_sum(f_dual[i], f_dual[j]);
                assert(rhs);
                if (!(f_dual[*mid] <= *rhs)) ok = false;
            }
        out.push_back(equiv_report("group.midpoint-converse", instance, ok, true,
                                   spec.is_dyadic() ? "" : "sparse coverage on Zd (parity)"));
    }

    return out;
}

}  // namespace fenchel
