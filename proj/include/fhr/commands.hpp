#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fhr/run_config.hpp"

namespace fhr::cli {

/// One line of the verification report.
struct CheckResult {
    std::string name;
    double target = 0.0;
    double achieved = 0.0;
    bool pass = false;
};

/// Verification suites selected by verify.suites.
std::vector<CheckResult> run_verification(const RunConfig& rc);

/// Runs the command and writes its CSV (header comments, column header, rows) to out.
/// Returns the process exit code: 0 when every check passed and every computation
/// converged, 1 otherwise.
int run_command(const RunConfig& rc, std::ostream& out);

/// "%.17g".
std::string format_number(double v);

}  // namespace fhr::cli
