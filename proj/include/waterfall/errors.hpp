// errors.hpp — error types shared by the allocation and decomposition kernels.

#pragma once

#include <stdexcept>
#include <string>

namespace waterfall {

/// Base class for all contract violations raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A cap schedule must contain at least one tranche.
struct EmptySchedule final : Error {
    EmptySchedule() : Error("cap schedule is empty; at least one tranche is required") {}
};

/// Caps (and psi evaluations used as caps) must be non-negative.
struct NonNegativityViolation final : Error {
    NonNegativityViolation(std::size_t index, const std::string& value)
        : Error("cap at index " + std::to_string(index) + " is negative: " + value),
          index(index) {}
    std::size_t index;
};

/// split_interval requires b >= a.
struct InvertedInterval final : Error {
    InvertedInterval(const std::string& a, const std::string& b)
        : Error("inverted interval: b = " + b + " < a = " + a) {}
};

/// Paired schedules must have the same number of tranches.
struct LengthMismatch final : Error {
    LengthMismatch(std::size_t m1, std::size_t m2)
        : Error("schedule lengths differ: " + std::to_string(m1) + " vs " + std::to_string(m2)),
          m1(m1), m2(m2) {}
    std::size_t m1;
    std::size_t m2;
};

/// Checked decomposition was requested but the dominance preconditions fail.
struct PreconditionViolated final : Error {
    using Error::Error;
};

/// psi evaluations must be non-negative to serve as caps.
struct NegativePsi final : Error {
    NegativePsi(std::size_t index, const std::string& value)
        : Error("psi evaluation at index " + std::to_string(index) + " is negative: " + value),
          index(index) {}
    std::size_t index;
};

/// A number token in a scenario file or CLI flag could not be parsed.
struct NumberFormatError final : Error {
    NumberFormatError(std::string token, std::size_t offset, const std::string& why)
        : Error("bad number \"" + token + "\" at offset " + std::to_string(offset) + ": " + why),
          token(std::move(token)), offset(offset) {}
    std::string token;
    std::size_t offset;  // 0-based character offset within the token
};

}  // namespace waterfall
