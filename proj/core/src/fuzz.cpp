#include "fenchel/fuzz.hpp"

#include <algorithm>
#include <map>

namespace fenchel {

std::uint64_t Fuzzer::next_u64() { return rng_(); }

std::size_t Fuzzer::uniform(std::size_t bound) {
    if (bound == 0) throw std::invalid_argument("Fuzzer::uniform: bound must be positive");
    return static_cast<std::size_t>(next_u64() % bound);
}

long Fuzzer::uniform_long(long lo, long hi) {
    return lo + static_cast<long>(uniform(static_cast<std::size_t>(hi - lo + 1)));
}

bool Fuzzer::chance(unsigned percent) { return uniform(100) < percent; }

Rational Fuzzer::finite_value() {
    static const long dens[] = {1, 2, 4};
    return Rational(uniform_long(-8, 8), dens[uniform(3)]);
}

Rational Fuzzer::positive_value() {
    static const Rational palette[] = {Rational(1, 4), Rational(1, 2), Rational(1),
                                       Rational(2),    Rational(3),    Rational(4)};
    return palette[uniform(6)];
}

ExtReal Fuzzer::value(Profile profile) {
    switch (profile) {
        case Profile::Any: {
            const std::size_t roll = uniform(100);
            if (roll < 10) return ExtReal::neg_inf();
            if (roll < 25) return ExtReal::pos_inf();
            return ExtReal(finite_value());
        }
        case Profile::RealValued:
            return ExtReal(finite_value());
        case Profile::LowerExtended:
            if (chance(20)) return ExtReal::pos_inf();
            return ExtReal(finite_value());
    }
    return ExtReal(0);
}

Carrier Fuzzer::carrier(std::size_t min_size, std::size_t max_size) {
    const std::size_t n = min_size + uniform(max_size - min_size + 1);
    std::vector<std::string> ids;
    ids.reserve(n);
    for (std::size_t i = 0; i < n; ++i) ids.push_back("p" + std::to_string(i));
    return Carrier(std::move(ids));
}

ExtFn Fuzzer::function(const Carrier& c, Profile profile) {
    std::vector<ExtReal> vals;
    vals.reserve(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) vals.push_back(value(profile));
    return ExtFn(c, std::move(vals));
}

std::vector<ExtFn> Fuzzer::family(const Carrier& c, std::size_t max_members, Profile profile) {
    const std::size_t count = 1 + uniform(max_members);
    std::vector<ExtFn> members;
    members.reserve(count);
    for (std::size_t i = 0; i < count; ++i) members.push_back(function(c, profile));
    return members;
}

TestFamily Fuzzer::test_family(const Carrier& c, std::size_t max_members, Profile profile) {
    return TestFamily::with_computed_flags(c, family(c, max_members, profile));
}

CarrierMap Fuzzer::carrier_map(const Carrier& source, const Carrier& target) {
    std::map<std::string, std::string> assignment;
    for (std::size_t i = 0; i < source.size(); ++i)
        assignment.emplace(source.id(i), target.id(uniform(target.size())));
    return CarrierMap(source, target, assignment);
}

ExtFn Fuzzer::group_fn(const GroupSpec& g, Profile profile) {
    // Per-coordinate window bound, for the half-window support test.
    std::vector<Rational> bound(g.hom_count(), Rational(0));
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t h = 0; h < g.hom_count(); ++h)
            bound[h] = std::max(bound[h], g.element(i)[h].abs());

    std::vector<ExtReal> vals;
    vals.reserve(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        bool half_window = true;
        for (std::size_t h = 0; h < g.hom_count(); ++h)
            if (bound[h] < g.element(i)[h].abs() * Rational(2)) half_window = false;
        if (!half_window || chance(40)) {
            vals.push_back(ExtReal::pos_inf());
            continue;
        }
        vals.push_back(value(profile));
    }
    return ExtFn(g.carrier(), std::move(vals));
}

ExtFn Fuzzer::convex_group_fn(const GroupSpec& g) {
    const std::size_t pieces = 1 + uniform(3);
    std::vector<std::vector<Rational>> slopes(pieces);
    std::vector<Rational> intercepts(pieces);
    for (std::size_t p = 0; p < pieces; ++p) {
        for (std::size_t h = 0; h < g.hom_count(); ++h) slopes[p].push_back(finite_value());
        intercepts[p] = finite_value();
    }
    std::vector<ExtReal> vals;
    vals.reserve(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        Rational best;
        bool first = true;
        for (std::size_t p = 0; p < pieces; ++p) {
            Rational v = intercepts[p];
            for (std::size_t h = 0; h < g.hom_count(); ++h)
                v += slopes[p][h] * g.element(i)[h];
            if (first || best < v) best = v;
            first = false;
        }
        vals.emplace_back(best);
    }
    return ExtFn(g.carrier(), std::move(vals));
}

std::vector<Rational> Fuzzer::interval_points(std::size_t max_points) {
    const std::size_t want = 2 + uniform(max_points - 1);
    std::vector<Rational> pts;
    for (std::size_t i = 0; i < 3 * want && pts.size() < want; ++i) {
        Rational candidate = finite_value();
        if (std::find(pts.begin(), pts.end(), candidate) == pts.end())
            pts.push_back(candidate);
    }
    if (pts.size() < 2) pts = {Rational(0), Rational(1)};
    std::sort(pts.begin(), pts.end());
    return pts;
}

std::vector<Rational> Fuzzer::slopes(std::size_t max_count) {
    const std::size_t count = 1 + uniform(max_count);
    std::vector<Rational> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(finite_value());
    return out;
}

}  // namespace fenchel
