#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qleb/gaussian.hpp"

namespace qleb::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFalse = 1,
  kExitInput = 2,
  kExitRouteDisagreement = 3,
  kExitSupportViolation = 4,
};

// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "1,0.5:-1;0,1" -> two vectors; components split by ',', vectors by ';',
// complex components written re:im.
QcfQuery parse_query(const std::string& text);
std::vector<long long> parse_int_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

}  // namespace qleb::cli
