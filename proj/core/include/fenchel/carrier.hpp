#ifndef FENCHEL_CARRIER_HPP
#define FENCHEL_CARRIER_HPP

#include <cstddef>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace fenchel {

/// Finite nonempty set of named points, with a fixed enumeration order.
/// Copies share storage; equality is by point-list content, so two carriers
/// built from the same id list are interchangeable.
class Carrier {
public:
    /// Throws std::invalid_argument when ids is empty or has duplicates.
    explicit Carrier(std::vector<std::string> ids);

    std::size_t size() const { return data_->ids.size(); }
    const std::string& id(std::size_t i) const { return data_->ids.at(i); }
    const std::vector<std::string>& ids() const { return data_->ids; }

    bool contains(const std::string& id) const { return data_->index.count(id) > 0; }
    /// Index of a point id; throws std::invalid_argument for unknown ids.
    std::size_t index_of(const std::string& id) const;

    bool operator==(const Carrier& o) const {
        return data_ == o.data_ || data_->ids == o.data_->ids;
    }

private:
    struct Data {
        std::vector<std::string> ids;
        std::unordered_map<std::string, std::size_t> index;
    };
    std::shared_ptr<const Data> data_;
};

/// Throws std::invalid_argument unless both carriers are equal.
void require_same_carrier(const Carrier& a, const Carrier& b, const char* where);

}  // namespace fenchel

#endif
