#pragma once

// Command-line front end shared by the carpet executable and its tests.

#include "bmc/setgeom.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace bmc {

/// Exit codes: 0 ok, 1 usage/parse/domain error, 2 resource or IO error,
/// 3 embedding refuted.
enum ExitCode { exit_ok = 0, exit_usage = 1, exit_resource = 2, exit_refuted = 3 };

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// One rect per box in box-set order; coordinates in 12 significant digits.
std::string to_svg(const BoxSet& s, const Box& view, int pixels = 512);

}  // namespace bmc
