#include "fenchel/extreal.hpp"

#include <ostream>
#include <stdexcept>

namespace fenchel {

const Rational& ExtReal::value() const {
    if (!is_finite()) throw std::logic_error("ExtReal: value() on infinite element");
    return value_;
}

std::string ExtReal::to_string() const {
    switch (kind_) {
        case Kind::PosInf: return "inf";
        case Kind::NegInf: return "-inf";
        case Kind::Finite: return value_.to_string();
    }
    return {};
}

ExtReal ExtReal::parse(const std::string& text) {
    if (text == "inf" || text == "+inf") return pos_inf();
    if (text == "-inf") return neg_inf();
    return finite(Rational::parse(text));
}

bool ExtReal::operator==(const ExtReal& o) const {
    if (kind_ != o.kind_) return false;
    return kind_ != Kind::Finite || value_ == o.value_;
}

std::strong_ordering ExtReal::operator<=>(const ExtReal& o) const {
    auto rank = [](Kind k) { return k == Kind::NegInf ? 0 : (k == Kind::Finite ? 1 : 2); };
    if (kind_ != o.kind_) return rank(kind_) <=> rank(o.kind_);
    if (kind_ != Kind::Finite) return std::strong_ordering::equal;
    return value_ <=> o.value_;
}

std::optional<ExtReal> add_checked(const ExtReal& a, const ExtReal& b) {
    if (a.is_pos_inf()) {
        if (b.is_neg_inf()) return std::nullopt;
        return ExtReal::pos_inf();
    }
    if (a.is_neg_inf()) {
        if (b.is_pos_inf()) return std::nullopt;
        return ExtReal::neg_inf();
    }
    if (b.is_pos_inf()) return ExtReal::pos_inf();
    if (b.is_neg_inf()) return ExtReal::neg_inf();
    return ExtReal::finite(a.value() + b.value());
}

std::optional<ExtReal> sub_checked(const ExtReal& a, const ExtReal& b) {
    return add_checked(a, negate(b));
}

ExtReal scale(const Rational& alpha, const ExtReal& a) {
    if (alpha.sign() == 0)
        throw std::invalid_argument("scale: zero multiplier against extended reals");
    if (a.is_finite()) return ExtReal::finite(alpha * a.value());
    const bool flip = alpha.sign() < 0;
    if (a.is_pos_inf()) return flip ? ExtReal::neg_inf() : ExtReal::pos_inf();
    return flip ? ExtReal::pos_inf() : ExtReal::neg_inf();
}

ExtReal extremum(std::span<const ExtReal> values, ExtremumMode mode) {
    if (values.empty())
        return mode == ExtremumMode::Sup ? ExtReal::neg_inf() : ExtReal::pos_inf();
    ExtReal best = values[0];
    for (std::size_t i = 1; i < values.size(); ++i)
        best = mode == ExtremumMode::Sup ? ext_max(best, values[i]) : ext_min(best, values[i]);
    return best;
}

ExtReal ext_abs(const ExtReal& a) {
    if (a.is_finite()) return ExtReal::finite(a.value().abs());
    return ExtReal::pos_inf();
}

std::string to_string(const std::optional<ExtReal>& v) {
    return v ? v->to_string() : std::string("undef");
}

std::ostream& operator<<(std::ostream& os, const ExtReal& v) {
    return os << v.to_string();
}

}  // namespace fenchel
