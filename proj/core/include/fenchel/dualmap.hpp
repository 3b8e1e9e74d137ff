#ifndef FENCHEL_DUALMAP_HPP
#define FENCHEL_DUALMAP_HPP

#include <map>
#include <string>
#include <vector>

#include "fenchel/extfn.hpp"
#include "fenchel/report.hpp"

namespace fenchel {

/// Total map between finite carriers, with precomputed fibers.
class CarrierMap {
public:
    /// `assignment` must bind every source point to a target point.
    CarrierMap(Carrier source, Carrier target,
               const std::map<std::string, std::string>& assignment);

    const Carrier& source() const { return source_; }
    const Carrier& target() const { return target_; }

    std::size_t apply(std::size_t source_index) const { return image_.at(source_index); }
    /// Preimage indices of a target point.
    const std::vector<std::size_t>& fiber(std::size_t target_index) const {
        return fibers_.at(target_index);
    }

    bool surjective() const { return surjective_; }
    bool injective() const { return injective_; }
    bool bijective() const { return surjective_ && injective_; }

private:
    Carrier source_;
    Carrier target_;
    std::vector<std::size_t> image_;
    std::vector<std::vector<std::size_t>> fibers_;
    bool surjective_ = false;
    bool injective_ = false;
};

/// Pullback A^<>(psi) = psi ∘ A: dual functions on the target become dual
/// functions on the source.
ExtFn pullback(const CarrierMap& A, const ExtFn& psi);

/// Inf-image (f • A^-1)(y) = inf { f(x) : A(x) = y }; empty fibers give +inf.
ExtFn inf_image(const ExtFn& f, const CarrierMap& A);

/// Composition rule (f • A^-1)*(phi) = f*(phi ∘ A) for f on the source and
/// phi on the target; exact equality, one report.
std::vector<LawReport> check_composition_rule(const ExtFn& f, const CarrierMap& A,
                                              const ExtFn& phi, const std::string& instance);

}  // namespace fenchel

#endif
