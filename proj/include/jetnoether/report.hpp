#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "jetnoether/parser.hpp"

namespace jetnoether {

struct CommandOptions {
    std::vector<std::string> generators;              // empty: all declared
    std::vector<std::string> laws;                    // verify; empty: all
    std::string mode = "balanced";                    // generic | balanced
    std::optional<BalanceMode> balance_override;      // --balance generic|formal
    bool strict_selfadjoint = true;
    KOptions k_options;
    std::string expression;                           // divtest operand
};

/// Exit status contract: 0 success with all residuals zero, 1 verified
/// negative (not self-adjoint, not a symmetry, not a divergence, invalid
/// law), 2 errors.
struct CommandResult {
    int exit_code = 0;
    std::string text;
    nlohmann::json json;
};

CommandResult run_adjoint(const ProblemFile& pf, const CommandOptions& opts);
CommandResult run_check_sym(const ProblemFile& pf, const CommandOptions& opts);
CommandResult run_extend(const ProblemFile& pf, const CommandOptions& opts);
CommandResult run_conserve(const ProblemFile& pf, const CommandOptions& opts);
CommandResult run_verify(const ProblemFile& pf, const CommandOptions& opts);
CommandResult run_divtest(const ProblemFile& pf, const CommandOptions& opts);

/// Dispatch by command name (adjoint, check-sym, extend, conserve, verify,
/// divtest).  Library errors become exit code 2 results, not exceptions.
CommandResult run_command(const std::string& command, const ProblemFile& pf,
                          const CommandOptions& opts);

} // namespace jetnoether
