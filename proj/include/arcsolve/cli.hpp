#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "arcsolve/config.hpp"

namespace arcsolve::cli {

enum ExitCode : int { ok = 0, input_error = 1, usage_error = 2, internal_error = 3 };

// Each command prints its report to `out` and diagnostics to `err`.
int cmd_perceive(const std::string& path, const Config& config, std::ostream& out, std::ostream& err);
int cmd_induce(const std::string& path, const Config& config, std::ostream& out, std::ostream& err);
int cmd_solve(const std::string& path, const Config& config, std::ostream& out, std::ostream& err);
int cmd_eval(const std::string& dir, const Config& config, const std::string& summary_path, std::ostream& out,
             std::ostream& err);
// Writes a synthetic suite (one JSON file per task) into dir.
int cmd_generate(const std::string& dir, int planted, int noise, const Config& config, std::ostream& out,
                 std::ostream& err);

// Full command line: `arcsolve <perceive|induce|solve|eval|generate> ...`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace arcsolve::cli
