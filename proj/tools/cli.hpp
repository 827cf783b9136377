#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hcm::cli {

/// Runs one command line (args excludes the program name) and writes the
/// JSON report to out. Returns 0 on success, 1 on a negative decision and
/// 2 on any error.
auto run(const std::vector<std::string>& args, std::ostream& out) -> int;

} // namespace hcm::cli
