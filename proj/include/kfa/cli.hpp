#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kfa/numeric.hpp"
#include "kfa/report.hpp"

namespace kfa {

/// Bad command-line input; maps to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Command { count, enumerate, constants, br, ek, loyd, weyl, invariance, decompose, baseline };
std::string to_string(Command c);
Command parse_command(const std::string& text);

/// Everything a run depends on. The thread count is deliberately excluded
/// from every output; it only affects speed.
struct RunConfig {
  Command command = Command::count;
  std::vector<u64> N{100};  // several values only for decompose
  unsigned k = 2;
  std::vector<std::string> alpha{"golden"};  // one per torus coordinate
  i64 h = 1;
  unsigned H = 0;  // weyl: when > 0, scan h = 1..H
  std::vector<u64> D;
  std::string window = "tent";
  std::string output = "json";
  int threads = 0;  // 0: runtime default

  std::string system = "circle";  // circle | cyclic | torus | skew
  u64 q = 2;
  std::vector<i64> freq;        // trig frequencies; empty: all ones
  std::vector<double> values;   // cyclic point values; empty: (1, -1, 1, ...)
  std::vector<double> x;        // starting point; empty: origin
  std::string domain = "kfull";
  std::string observable = "liouville";  // one | liouville | br | ek | loyd
  std::vector<u64> m{2, 3, 5};
  std::string rule = "powers_of_two";
  bool exact = false;
  std::string order = "generator";
  std::string dump;  // enum: binary dump path
  u64 prime_limit = kDefaultPrimeLimit;
  double tolerance = 1e-2;

  bool operator==(const RunConfig&) const = default;
};

Json to_json(const RunConfig& c);
RunConfig config_from_json(const Json& j);

/// "100", "1e12", "10^12", "2.5e3"; must denote an integer >= 0.
u64 parse_count(const std::string& text);

/// Runs one command, writing the result to out. Throws UsageError, DomainError
/// or OverflowError for bad input and other exceptions for computation failures.
void run(const RunConfig& config, std::ostream& out);

/// run() with the exit-code contract: 0 success, 2 usage error, 1 computation
/// error. Diagnostics go to err.
int run_reporting(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace kfa
