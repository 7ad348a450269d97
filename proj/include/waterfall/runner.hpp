// runner.hpp — scenario evaluation and the seeded fuzz suites.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "waterfall/oracle.hpp"
#include "waterfall/scenario.hpp"

namespace waterfall {

/// Which operation a CLI subcommand applies. Diff and Check both consume
/// diff-tagged scenarios; the other ops consume their own tag. Scenarios of
/// other tags are skipped, so one file can serve every subcommand.
enum class RunOp { Allocate, Diff, Check, SplitInterval, PsiDiff };

struct RunOutcome {
    std::vector<std::string> records;  // one JSON object per evaluated scenario
    std::size_t evaluated = 0;
    std::size_t failures = 0;

    bool passed() const { return failures == 0; }
};

/// Evaluate the matching scenarios of `file` under `op`. Mode and tolerance
/// overrides take precedence over the file header; the effective tolerance
/// applies to float-mode assertions only (default 1e-12). Record order
/// follows scenario order in the file; output is deterministic and, in
/// exact mode, byte-stable.
RunOutcome run_scenarios(const ScenarioFile& file, RunOp op,
                         std::optional<NumericMode> mode_override = std::nullopt,
                         std::optional<Rational> tolerance_override = std::nullopt);

/// Seeded property fuzzing: term-by-term agreement of the closed form with
/// the sequential pour over generate_case, and the difference-decomposition
/// identity over generate_dominance_pair. Emits one summary record per
/// suite (none when cases == 0) carrying the first failing (seed, index).
RunOutcome run_fuzz(const gen::FuzzConfig& cfg);

const char* run_op_name(RunOp op);

/// One human-readable line per failed record, naming the scenario index and
/// the violated contract. Intended for standard error.
std::vector<std::string> run_outcome_diagnostics(const RunOutcome& outcome);

}  // namespace waterfall
