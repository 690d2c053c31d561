#pragma once

// Enumeration of all Wronskian pairs for given model data.
//
// After q1 = q2 = 0 fixes h_1, h_2 and the triangular solve fixes a(h), the
// points are the common zeros of q_{l+3}..q_{l+n} in (h_3..h_n): a square
// system of n-2 equations.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xxxlab/qsystem/pairs.hpp"

namespace xxxlab {

enum class SolveMethod { eigen_seeded, newton_multistart, exact_elimination };
const char* to_string(SolveMethod m);
SolveMethod parse_solve_method(const std::string& s);

struct SolveOptions {
  std::vector<std::vector<Complex>> seeds;  // full h tuples, for eigen_seeded
  std::uint64_t seed = 1;                   // RNG seed for newton_multistart
  std::size_t starts = 0;                   // 0: 200 (n-2)
  int max_iterations = 60;                  // per Newton run
  std::size_t iteration_budget = 0;         // total Newton iterations, 0: unlimited
  double newton_tol = 1e-10;                // relative residual accepted as converged
  double dedup_tol = 1e-7;                  // max-norm in h space
  std::int64_t reconstruct_bound = 1000000;
  unsigned threads = 1;
};

struct SolverStats {
  std::size_t starts = 0;
  std::size_t newton_iterations = 0;
  std::size_t converged = 0;
  std::size_t dedup_merges = 0;
};

struct SolveReport {
  SolveMethod method = SolveMethod::eigen_seeded;
  std::vector<WronskiPair> pairs;
  long long expected = -1;  // -1 when the count formula does not apply
  double min_separation = 0.0;  // min max-norm distance between coefficient vectors
  SolverStats stats;
  bool budget_exceeded = false;
  std::vector<std::string> notes;
  std::size_t found() const { return pairs.size(); }
};

/// Raised when the iteration budget runs out; carries the partial report.
class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(SolveReport partial)
      : Error(ErrorCode::SolverBudgetExceeded, "Newton iteration budget exhausted"), partial_(std::move(partial)) {}
  const SolveReport& partial() const { return partial_; }

 private:
  SolveReport partial_;
};

struct NewtonResult {
  std::vector<Complex> h;  // full h_1..h_n
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;  // relative
};

/// Newton iteration on (h_3..h_n) from the given full h.
NewtonResult newton_refine(std::vector<Complex> h, const ModelParams& params, int max_iterations, double tol);

/// Newton iteration on the Wronskian equation for (f, g) started from the
/// pair at h; returns the refined full h, or nullopt if it does not converge.
/// Quadratic at points where the h-system has a multiple root.
std::optional<std::vector<Complex>> wronskian_refine(const std::vector<Complex>& h, const ModelParams& params,
                                                     int max_iterations = 40);

/// Relative residual of the square system at h.
double scheme_residual(const std::vector<Complex>& h, const ModelParams& params);

/// Rational promotion and certification of a numeric point.
WronskiPair certify_point(const std::vector<Complex>& h, const ModelParams& params, std::int64_t bound);

SolveReport enumerate_pairs(const ModelParams& params, SolveMethod method, const SolveOptions& options = {});

}  // namespace xxxlab
