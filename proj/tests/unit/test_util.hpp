#ifndef FENCHEL_TEST_UTIL_HPP
#define FENCHEL_TEST_UTIL_HPP

#include <initializer_list>
#include <string>
#include <vector>

#include "fenchel/extfn.hpp"

namespace testutil {

using fenchel::Carrier;
using fenchel::ExtFn;
using fenchel::ExtReal;
using fenchel::Rational;

inline Carrier carrier(std::initializer_list<const char*> ids) {
    std::vector<std::string> v;
    for (const char* id : ids) v.emplace_back(id);
    return Carrier(std::move(v));
}

/// Values given as literals ("2", "1/3", "inf", "-inf").
inline ExtFn fn(const Carrier& c, std::initializer_list<const char*> values) {
    std::vector<ExtReal> v;
    for (const char* s : values) v.push_back(ExtReal::parse(s));
    return ExtFn(c, std::move(v));
}

inline ExtReal ext(const char* s) { return ExtReal::parse(s); }
inline Rational rat(const char* s) { return Rational::parse(s); }

}  // namespace testutil

#endif
