#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace dvkit::cli {

enum class Command { Classify, Reflect, Sos, Represent, Extend, Verify, Demo };

inline constexpr int kExitPass = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFail = 2;

struct RunConfig {
  Command command = Command::Demo;
  std::vector<std::string> inputs;
  int grid_n = 64;
  double tol = 1e-7;
  double a = 1.0;
  double b = 1.0;
  // sos: weights switch to the symmetric certificate.
  bool weights_given = false;
  std::uint64_t seed = 7;
  // Variety sample size for represent; 0 picks the default.
  int samples = 0;
  // Empty writes the report to stdout.
  std::string output;
};

// Either a validated config or an exit code (help, usage error).
std::variant<RunConfig, int> parse_args(int argc, const char* const* argv, std::ostream& out,
                                        std::ostream& err);

// Throws nothing; library errors become reports with exit code 1 (parse and
// argument errors) or 2 (everything else).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace dvkit::cli
