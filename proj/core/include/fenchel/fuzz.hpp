#ifndef FENCHEL_FUZZ_HPP
#define FENCHEL_FUZZ_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "fenchel/dualmap.hpp"
#include "fenchel/extfn.hpp"
#include "fenchel/group.hpp"
#include "fenchel/regclose.hpp"

namespace fenchel {

/// Deterministic instance generator.  All draws reduce the raw mt19937_64
/// stream with modulo arithmetic — never the standard distributions, whose
/// outputs are implementation-defined — so a seed pins identical instances
/// on every platform.  Finite values come from a small exact palette
/// (numerators -8..8 over denominators 1, 2, 4) chosen to make collisions,
/// ties, and attained suprema frequent.
class Fuzzer {
public:
    explicit Fuzzer(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t next_u64();
    /// Uniform draw in [0, bound); bound must be positive.
    std::size_t uniform(std::size_t bound);
    long uniform_long(long lo, long hi);
    bool chance(unsigned percent);

    Rational finite_value();
    /// Positive scalar from {1/4, 1/2, 1, 2, 3, 4}.
    Rational positive_value();

    enum class Profile {
        Any,            // -inf ~10%, +inf ~15%, else finite
        RealValued,     // finite only
        LowerExtended,  // +inf ~20%, else finite
    };
    ExtReal value(Profile profile);

    Carrier carrier(std::size_t min_size, std::size_t max_size);
    ExtFn function(const Carrier& c, Profile profile);
    std::vector<ExtFn> family(const Carrier& c, std::size_t max_members, Profile profile);
    TestFamily test_family(const Carrier& c, std::size_t max_members, Profile profile);

    /// Random total map; collisions and missed targets arise naturally, so
    /// non-injective maps and empty fibers are both exercised.
    CarrierMap carrier_map(const Carrier& source, const Carrier& target);

    /// Function on a group window whose effective domain sits in the half
    /// window, so products of effective-domain points never overflow.
    ExtFn group_fn(const GroupSpec& g, Profile profile);
    /// Max of 1..3 affine functions of the window coordinates: real-valued
    /// and mid-point convex, for non-vacuous convexity-transfer checks.
    ExtFn convex_group_fn(const GroupSpec& g);

    /// Strictly increasing grid of 2..max_points palette values.
    std::vector<Rational> interval_points(std::size_t max_points);
    std::vector<Rational> slopes(std::size_t max_count);

private:
    std::mt19937_64 rng_;
};

}  // namespace fenchel

#endif
