#pragma once

#include <optional>
#include <string>
#include <utility>

#include "mkit/algebra_io.hpp"
#include "mkit/identity.hpp"

namespace mkit {

struct CommandResult {
  Json report;
  int exit_code = 0;  // 0 success/holds (NoK included), 1 identity fails
};

struct CommonArgs {
  FiniteAlgebra algebra;
  std::string algebra_ref;  // "builtin:<name>" or a file path
  int jobs = 1;
  long long cap = 500000;
};

CommandResult cmd_congruences(const CommonArgs& args);
CommandResult cmd_check(const CommonArgs& args, const std::string& identity_text,
                        const ParamValues& params);
CommandResult cmd_min_k(const CommonArgs& args);
CommandResult cmd_terms(const CommonArgs& args);
CommandResult cmd_free(const CommonArgs& args, bool dump);
CommandResult cmd_bounds(const CommonArgs& args, std::optional<int> k,
                         std::optional<int> p, int ell,
                         std::optional<std::pair<int, int>> r_table);

/// Re-check the certificate embedded in a previously written report.
/// Exit 0 when it re-verifies, 1 when it does not.
CommandResult verify_report_file(const std::string& path);

/// One-screen text rendering of a report.
std::string render_text(const Json& report);

}  // namespace mkit
