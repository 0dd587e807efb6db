#pragma once

#include <nlohmann/json_fwd.hpp>

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pstchain/rational.hpp"

namespace pstchain {

// One command per invocation.  Field names double as the JSON config schema;
// values given on the command line override values from a config file.
struct RunConfig {
  std::string command;  // couplings | spectrum | evolve | scan | check-pst | check-fr | cycle
  int n = 1;
  std::string alpha = "0";  // real, or exact "p/q" string
  std::string beta = "1";
  std::string t;      // evolve: time, plain real or multiple-of-pi syntax ("pi/2", "2pi")
  std::string t_max;  // scan: same syntax
  int steps = 1001;
  std::string output;  // destination path; empty writes to stdout
  std::string format;  // "csv" | "json"; empty picks the per-command default
  double tol = 1e-9;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

void to_json(nlohmann::json& j, const RunConfig& c);
void from_json(const nlohmann::json& j, RunConfig& c);  // merges onto existing values

// A coupling strength parsed from the command line; integer and "p/q" inputs
// keep their exact value so certification never sees a float round-trip.
struct Parameter {
  double value = 0.0;
  std::optional<Rational> exact;
};

Parameter parse_parameter(const std::string& text);  // throws std::invalid_argument

// Accepts "pi/2", "2pi", "3pi/4", "0.5pi" and plain reals.
double parse_time_expr(const std::string& text);  // throws std::invalid_argument

// Prints t symbolically ("pi/2", "3pi") when it is a small exact rational
// multiple of pi, and falls back to 17-significant-digit decimal otherwise.
std::string format_pi_time(double t);

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HelpRequested {
  std::string text;
};

// Builds the config from command-line arguments (excluding argv[0]) plus an
// optional --config JSON file, with flags taking precedence.  The default
// tolerance honours the PSTCHAIN_TOL environment variable.
// Throws UsageError on bad input and HelpRequested for --help.
RunConfig parse_args(const std::vector<std::string>& args);

// Executes one command: emits JSON or CSV to `output` (atomically) or to
// `out`, reporting problems on `err`.  Returns 0 on success, 2 when a
// requested verification or certification does not hold, 1 on usage errors.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

int cli_main(int argc, char** argv);

}  // namespace pstchain
