// Shared helpers for the test suites.

#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "waterfall/core.hpp"
#include "waterfall/rational.hpp"

namespace wtest {

using waterfall::Rational;

inline Rational R(const char* s) { return waterfall::parse_rational(s); }

inline std::vector<Rational> rvec(std::initializer_list<const char*> xs) {
    std::vector<Rational> out;
    out.reserve(xs.size());
    for (const char* s : xs) out.push_back(R(s));
    return out;
}

inline waterfall::CapSchedule<Rational> sched(std::initializer_list<const char*> xs) {
    return waterfall::CapSchedule<Rational>(rvec(xs));
}

template <typename T>
std::string terms_text(const std::vector<T>& terms) {
    std::string s = "[";
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) s += ", ";
        s += waterfall::scalar_text(terms[i]);
    }
    return s + "]";
}

}  // namespace wtest
