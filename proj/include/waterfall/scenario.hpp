// scenario.hpp — scenario file model: strict parsing and canonical re-emission.
//
// Scenario files carry every number as a string (decimal or "p/q"), so exact
// mode ingestion is lossless. Parsing is strict: unknown fields, bare JSON
// numbers, and version mismatches are rejected with the offending path.

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "waterfall/decomposition.hpp"
#include "waterfall/rational.hpp"

namespace waterfall {

inline constexpr const char* kScenarioSchemaVersion = "1";

enum class NumericMode { Exact, Float };

struct AllocateScenario {
    Rational x;
    std::vector<Rational> caps;
    bool operator==(const AllocateScenario&) const = default;
};

struct DiffScenario {
    Rational x1;
    std::vector<Rational> caps1;
    Rational x2;
    std::vector<Rational> caps2;
    CheckMode mode = CheckMode::Checked;
    bool operator==(const DiffScenario&) const = default;
};

struct SplitScenario {
    Rational a;
    Rational b;
    std::vector<Rational> lengths;
    bool operator==(const SplitScenario&) const = default;
};

struct PsiDiffScenario {
    Rational x;
    Rational y1;
    Rational y2;
    std::vector<Rational> psi_at_y1;
    std::vector<Rational> psi_at_y2;
    bool operator==(const PsiDiffScenario&) const = default;
};

using Scenario = std::variant<AllocateScenario, DiffScenario, SplitScenario, PsiDiffScenario>;

struct ScenarioFile {
    std::string version = kScenarioSchemaVersion;
    NumericMode numeric_mode = NumericMode::Exact;
    std::optional<Rational> tolerance;  // float mode only
    std::vector<Scenario> scenarios;
    bool operator==(const ScenarioFile&) const = default;
};

/// Schema-level failure: malformed JSON, unknown field, version mismatch,
/// wrong type, or a malformed number. Maps to CLI exit code 2.
struct ScenarioParseError final : Error {
    using Error::Error;
};

ScenarioFile parse_scenario_file(const std::string& text);

/// Canonical pretty-printed form. Numbers re-emit as canonical rationals, so
/// serialize/parse round-trips to a semantically identical file.
std::string serialize_scenario_file(const ScenarioFile& file);

const char* numeric_mode_name(NumericMode mode);

}  // namespace waterfall
