#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace modlab::cli {

enum class Command { Verify, Reproduce, Search, List };
enum class Format { Text, Json };

/// Fully resolved invocation. Unset optionals mean "use the command default".
struct RunConfig {
  Command command = Command::List;
  std::string topic = "all";  ///< list subject: suites, examples, problems, all
  std::string suite = "all";
  std::string example = "all";
  std::string problem = "c_sym_op";
  std::vector<std::string> warm;  ///< catalog ids seeding the first restarts
  std::optional<std::size_t> m;
  std::optional<std::size_t> n;
  std::optional<double> p;
  std::optional<std::string> norm;
  std::optional<double> theta;
  std::size_t trials = 1000;
  std::size_t restarts = 50;
  std::size_t iters = 2000;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  Format format = Format::Text;
  std::optional<std::string> out;
  bool timing = true;
};

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kConfigError = 2;

/// Parses argv-style arguments (without the program name). Throws
/// modlab::Error(BadArgument) on usage errors.
RunConfig parse_args(const std::vector<std::string>& args);

int run_verify(const RunConfig& cfg, std::ostream& out);
int run_reproduce(const RunConfig& cfg, std::ostream& out);
int run_search(const RunConfig& cfg, std::ostream& out);
int run_list(const RunConfig& cfg, std::ostream& out);

/// Full entry point: parse, validate, dispatch. Usage problems go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace modlab::cli
