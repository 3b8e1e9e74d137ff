#include "fenchel/extfn.hpp"

#include <stdexcept>

namespace fenchel {

Carrier::Carrier(std::vector<std::string> ids) {
    if (ids.empty()) throw std::invalid_argument("Carrier: empty point list");
    auto data = std::make_shared<Data>();
    data->ids = std::move(ids);
    for (std::size_t i = 0; i < data->ids.size(); ++i) {
        if (!data->index.emplace(data->ids[i], i).second)
            throw std::invalid_argument("Carrier: duplicate point id '" + data->ids[i] + "'");
    }
    data_ = std::move(data);
}

std::size_t Carrier::index_of(const std::string& id) const {
    auto it = data_->index.find(id);
    if (it == data_->index.end())
        throw std::invalid_argument("Carrier: unknown point id '" + id + "'");
    return it->second;
}

void require_same_carrier(const Carrier& a, const Carrier& b, const char* where) {
    if (!(a == b))
        throw std::invalid_argument(std::string(where) + ": carrier mismatch");
}

ExtFn::ExtFn(Carrier carrier, std::vector<ExtReal> values)
    : carrier_(std::move(carrier)), values_(std::move(values)) {
    if (values_.size() != carrier_.size())
        throw std::invalid_argument("ExtFn: value count does not match carrier size");
}

ExtFn ExtFn::constant(const Carrier& carrier, const ExtReal& v) {
    return ExtFn(carrier, std::vector<ExtReal>(carrier.size(), v));
}

bool ExtFn::real_valued() const {
    for (const auto& v : values_)
        if (!v.is_finite()) return false;
    return true;
}

bool ExtFn::lower_extended() const {
    for (const auto& v : values_)
        if (v.is_neg_inf()) return false;
    return true;
}

SumDomains sum_domains(const ExtFn& f, const ExtFn& g) {
    require_same_carrier(f.carrier(), g.carrier(), "sum_domains");
    SumDomains out;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (add_checked(f.at(i), g.at(i))) {
            out.dom.push_back(i);
            if (!f.at(i).is_neg_inf() && !g.at(i).is_neg_inf()) out.rdom.push_back(i);
        }
    }
    return out;
}

Rational sup_norm(const ExtFn& f) {
    if (!f.real_valued())
        throw std::invalid_argument("sup_norm: function must be real-valued");
    Rational best = f.at(std::size_t{0}).value().abs();
    for (std::size_t i = 1; i < f.size(); ++i) {
        Rational a = f.at(i).value().abs();
        if (a > best) best = a;
    }
    return best;
}

bool leq_fn(const ExtFn& f, const ExtFn& g) {
    require_same_carrier(f.carrier(), g.carrier(), "leq_fn");
    for (std::size_t i = 0; i < f.size(); ++i)
        if (!(f.at(i) <= g.at(i))) return false;
    return true;
}

ExtFn pointwise_extremum(const Carrier& carrier, const std::vector<ExtFn>& family,
                         ExtremumMode mode) {
    for (const auto& m : family) require_same_carrier(carrier, m.carrier(), "pointwise_extremum");
    std::vector<ExtReal> out;
    out.reserve(carrier.size());
    for (std::size_t i = 0; i < carrier.size(); ++i) {
        std::vector<ExtReal> col;
        col.reserve(family.size());
        for (const auto& m : family) col.push_back(m.at(i));
        out.push_back(extremum(col, mode));
    }
    return ExtFn(carrier, std::move(out));
}

ExtFn indicator_fn(const Carrier& carrier, const std::vector<std::string>& subset) {
    std::vector<ExtReal> vals(carrier.size(), ExtReal::pos_inf());
    for (const auto& id : subset) vals.at(carrier.index_of(id)) = ExtReal(0);
    return ExtFn(carrier, std::move(vals));
}

std::vector<std::pair<std::string, Rational>> epigraph_fn(
    const ExtFn& f, const std::vector<Rational>& level_grid) {
    std::vector<std::pair<std::string, Rational>> out;
    for (std::size_t i = 0; i < f.size(); ++i)
        for (const auto& c : level_grid)
            if (f.at(i) <= ExtReal(c)) out.emplace_back(f.carrier().id(i), c);
    return out;
}

ExtFn scale_fn(const Rational& alpha, const ExtFn& f) {
    std::vector<ExtReal> vals;
    vals.reserve(f.size());
    for (const auto& v : f.values()) vals.push_back(scale(alpha, v));
    return ExtFn(f.carrier(), std::move(vals));
}

ExtFn add_const_fn(const ExtFn& f, const Rational& c) {
    std::vector<ExtReal> vals;
    vals.reserve(f.size());
    for (const auto& v : f.values()) vals.push_back(*add_checked(v, ExtReal(c)));
    return ExtFn(f.carrier(), std::move(vals));
}

std::optional<ExtFn> add_fn_checked(const ExtFn& f, const ExtFn& g) {
    require_same_carrier(f.carrier(), g.carrier(), "add_fn_checked");
    std::vector<ExtReal> vals;
    vals.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        auto s = add_checked(f.at(i), g.at(i));
        if (!s) return std::nullopt;
        vals.push_back(*s);
    }
    return ExtFn(f.carrier(), std::move(vals));
}

ExtFn max_fn(const ExtFn& f, const ExtFn& g) {
    require_same_carrier(f.carrier(), g.carrier(), "max_fn");
    std::vector<ExtReal> vals;
    vals.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) vals.push_back(ext_max(f.at(i), g.at(i)));
    return ExtFn(f.carrier(), std::move(vals));
}

ExtFn min_fn(const ExtFn& f, const ExtFn& g) {
    require_same_carrier(f.carrier(), g.carrier(), "min_fn");
    std::vector<ExtReal> vals;
    vals.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) vals.push_back(ext_min(f.at(i), g.at(i)));
    return ExtFn(f.carrier(), std::move(vals));
}

}  // namespace fenchel
