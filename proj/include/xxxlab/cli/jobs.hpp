#pragma once

// Job configuration, dispatch and JSON reports for the command-line tool.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "xxxlab/diffop/model.hpp"

namespace xxxlab::cli {

inline constexpr int kMaxN = 12;
inline constexpr int kMaxSovN = 6;

inline constexpr int kExitOk = 0;
inline constexpr int kExitSolver = 1;
inline constexpr int kExitMath = 2;
inline constexpr int kExitUsage = 64;

const char* version();

/// Bad configuration; maps to exit code 64.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Mode { exact, numeric, automatic };
const char* to_string(Mode m);
Mode parse_mode(const std::string& s);

struct Tolerances {
  double newton = 1e-10;      // relative Newton residual
  double dedup = 1e-7;        // max-norm in h space
  double commutator = 1e-10;  // relative, pairwise
  double leakage = 1e-9;
  double separation = 1e-6;
  double match = 1e-8;  // max-norm h distance for a match
  double sov = 1e-9;    // numeric SoV residuals and extraction
};

struct JobConfig {
  std::string command;  // pairs, spectrum, match, sov-check
  int n = 0;
  int l = 0;
  std::vector<Rational> z;  // empty: all 0
  Mode mode = Mode::automatic;
  std::string method = "auto";  // auto or a SolveMethod name
  Tolerances tol;
  std::uint64_t seed = 1;
  std::size_t budget = 0;  // total Newton iterations, 0: unlimited
  unsigned threads = 1;
  std::optional<std::string> out;
  bool timings = true;
};

struct JobResult {
  int exit_code = kExitOk;
  nlohmann::json report;
  std::string summary;  // one line for the terminal
};

/// Comma-separated rationals, e.g. "0,1/2,-3".
std::vector<Rational> parse_z_list(const std::string& text);

/// Checks caps and model invariants; throws UsageError.
ModelParams validate(const JobConfig& config);

/// Runs one job. Mathematical failures set the exit code and stay in the
/// report; usage errors throw UsageError.
JobResult run_job(const JobConfig& config);

/// --out if given, else <dir>/<command>-n<N>-l<L>.json for a nonempty
/// out_dir, else nullopt (stdout).
std::optional<std::string> output_path(const JobConfig& config, const char* out_dir);

}  // namespace xxxlab::cli
