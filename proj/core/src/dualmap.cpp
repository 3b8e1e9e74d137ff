#include "fenchel/dualmap.hpp"

#include <stdexcept>

#include "fenchel/conjugate.hpp"

namespace fenchel {

CarrierMap::CarrierMap(Carrier source, Carrier target,
                       const std::map<std::string, std::string>& assignment)
    : source_(std::move(source)), target_(std::move(target)) {
    image_.resize(source_.size());
    fibers_.resize(target_.size());
    std::vector<bool> bound(source_.size(), false);
    for (const auto& [from, to] : assignment) {
        const std::size_t i = source_.index_of(from);
        const std::size_t j = target_.index_of(to);
        if (bound[i])
            throw std::invalid_argument("CarrierMap: point '" + from + "' bound twice");
        bound[i] = true;
        image_[i] = j;
    }
    for (std::size_t i = 0; i < source_.size(); ++i)
        if (!bound[i])
            throw std::invalid_argument("CarrierMap: point '" + source_.id(i) + "' unbound");
    for (std::size_t i = 0; i < source_.size(); ++i) fibers_[image_[i]].push_back(i);

    surjective_ = true;
    injective_ = true;
    for (const auto& fb : fibers_) {
        if (fb.empty()) surjective_ = false;
        if (fb.size() > 1) injective_ = false;
    }
}

ExtFn pullback(const CarrierMap& A, const ExtFn& psi) {
    require_same_carrier(A.target(), psi.carrier(), "pullback");
    std::vector<ExtReal> vals;
    vals.reserve(A.source().size());
    for (std::size_t i = 0; i < A.source().size(); ++i) vals.push_back(psi.at(A.apply(i)));
    return ExtFn(A.source(), std::move(vals));
}

ExtFn inf_image(const ExtFn& f, const CarrierMap& A) {
    require_same_carrier(A.source(), f.carrier(), "inf_image");
    std::vector<ExtReal> vals;
    vals.reserve(A.target().size());
    for (std::size_t j = 0; j < A.target().size(); ++j) {
        std::vector<ExtReal> fiber_vals;
        for (auto i : A.fiber(j)) fiber_vals.push_back(f.at(i));
        vals.push_back(extremum(fiber_vals, ExtremumMode::Inf));  // empty fiber -> +inf
    }
    return ExtFn(A.target(), std::move(vals));
}

std::vector<LawReport> check_composition_rule(const ExtFn& f, const CarrierMap& A,
                                              const ExtFn& phi, const std::string& instance) {
    require_same_carrier(A.source(), f.carrier(), "check_composition_rule");
    require_same_carrier(A.target(), phi.carrier(), "check_composition_rule");
    const ExtReal lhs = conjugate_value(inf_image(f, A), phi);
    const ExtReal rhs = conjugate_value(f, pullback(A, phi));
    return {checked_report("dual.composition", instance, Relation::Eq, lhs, rhs)};
}

}  // namespace fenchel
