// waterfall CLI — batch scenario evaluation and seeded property fuzzing.
//
// Exit codes: 0 all scenarios pass, 1 any contract failure, 2 usage or
// parse/schema errors. Reports are line-delimited JSON on stdout;
// diagnostics go to stderr.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "waterfall/runner.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitContractFailure = 1;
constexpr int kExitUsage = 2;

struct FileArgs {
    std::string path;
    std::string mode;       // "", "exact" or "float"
    std::string tolerance;  // "", or a non-negative number string
};

void emit(const waterfall::RunOutcome& outcome) {
    for (const std::string& record : outcome.records) std::cout << record << "\n";
    for (const std::string& line : waterfall::run_outcome_diagnostics(outcome))
        std::cerr << "waterfall: " << line << "\n";
}

int run_file_op(waterfall::RunOp op, const FileArgs& args) {
    using namespace waterfall;

    std::ifstream in(args.path);
    if (!in) {
        std::cerr << "waterfall: cannot open \"" << args.path << "\"\n";
        return kExitUsage;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();

    ScenarioFile file;
    try {
        file = parse_scenario_file(buffer.str());
    } catch (const ScenarioParseError& e) {
        std::cerr << "waterfall: " << args.path << ": " << e.what() << "\n";
        return kExitUsage;
    }

    std::optional<NumericMode> mode;
    if (args.mode == "exact") mode = NumericMode::Exact;
    if (args.mode == "float") mode = NumericMode::Float;

    std::optional<Rational> tolerance;
    if (!args.tolerance.empty()) {
        try {
            tolerance = parse_rational(args.tolerance);
        } catch (const NumberFormatError& e) {
            std::cerr << "waterfall: --tolerance: " << e.what() << "\n";
            return kExitUsage;
        }
        if (*tolerance < Rational(0)) {
            std::cerr << "waterfall: --tolerance must be non-negative\n";
            return kExitUsage;
        }
        if (mode.value_or(file.numeric_mode) != NumericMode::Float) {
            std::cerr << "waterfall: --tolerance requires float mode\n";
            return kExitUsage;
        }
    }

    const RunOutcome outcome = run_scenarios(file, op, mode, tolerance);
    emit(outcome);
    return outcome.passed() ? kExitPass : kExitContractFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Priority-waterfall allocation and difference-decomposition toolkit"};
    app.require_subcommand(1);

    struct Sub {
        waterfall::RunOp op;
        CLI::App* cmd;
        FileArgs args;
    };
    Sub subs[] = {
        {waterfall::RunOp::Allocate,
         app.add_subcommand("allocate", "Split each scenario amount over its cap schedule"), {}},
        {waterfall::RunOp::Diff,
         app.add_subcommand("diff", "Difference decomposition of scenario pairs"), {}},
        {waterfall::RunOp::Check,
         app.add_subcommand("check", "Dominance precondition check of scenario pairs"), {}},
        {waterfall::RunOp::SplitInterval,
         app.add_subcommand("split-interval", "Cut [a, b] into subintervals of scheduled lengths"),
         {}},
        {waterfall::RunOp::PsiDiff,
         app.add_subcommand("psi-diff", "Difference decomposition via supplied psi evaluations"),
         {}},
    };
    for (Sub& sub : subs) {
        sub.cmd->add_option("--in", sub.args.path, "Scenario file")->required();
        sub.cmd->add_option("--mode", sub.args.mode, "Numeric mode override")
            ->check(CLI::IsMember({"exact", "float"}));
        sub.cmd->add_option("--tolerance", sub.args.tolerance,
                            "Absolute tolerance for float-mode assertions (default 1e-12)");
    }

    CLI::App* fuzz = app.add_subcommand(
        "fuzz", "Seeded property fuzzing: closed form vs sequential pour, and the "
                "difference-decomposition identity");
    waterfall::gen::FuzzConfig cfg;
    std::string magnitude = "1000";
    fuzz->add_option("--seed", cfg.seed, "Stream seed")->required();
    fuzz->add_option("--cases", cfg.cases, "Cases per suite")->required();
    fuzz->add_option("--max-m", cfg.max_m, "Largest schedule length")
        ->check(CLI::PositiveNumber);
    fuzz->add_option("--magnitude", magnitude, "Bound on |amounts| and caps (default 1000)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    if (fuzz->parsed()) {
        try {
            cfg.magnitude_bound = waterfall::parse_rational(magnitude);
        } catch (const waterfall::NumberFormatError& e) {
            std::cerr << "waterfall: --magnitude: " << e.what() << "\n";
            return kExitUsage;
        }
        if (!(cfg.magnitude_bound > waterfall::Rational(0))) {
            std::cerr << "waterfall: --magnitude must be positive\n";
            return kExitUsage;
        }
        const waterfall::RunOutcome outcome = waterfall::run_fuzz(cfg);
        emit(outcome);
        return outcome.passed() ? kExitPass : kExitContractFailure;
    }

    for (const Sub& sub : subs)
        if (sub.cmd->parsed()) return run_file_op(sub.op, sub.args);
    return kExitUsage;  // unreachable: a subcommand is required
}
