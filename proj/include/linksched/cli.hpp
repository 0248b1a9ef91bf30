#pragma once

#include <iosfwd>

namespace linksched {

/// Exit codes: 0 success, 1 validation failure, 2 usage or parse error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;

/// `linksched evacuate|throughput|validate ...`
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace linksched
