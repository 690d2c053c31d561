#pragma once

// Bethe ansatz equations for roots t_1..t_l:
//   prod_s (t_j - z_s + 1 + m_s) prod_{k != j} (t_j - t_k - 1)
//     = prod_s (t_j - z_s + 1) prod_{k != j} (t_j - t_k + 1).

#include <span>
#include <string>
#include <vector>

#include "xxxlab/diffop/model.hpp"

namespace xxxlab {

enum class RootClass { admissible, non_admissible, off_shell };

const char* to_string(RootClass c);

struct BetheRoots {
  std::vector<Complex> t;
  RootClass classification = RootClass::off_shell;
};

struct BaeResult {
  std::vector<Complex> residuals;  // LHS_j - RHS_j
  RootClass classification = RootClass::off_shell;
};

struct BaeTolerances {
  double factor = 1e-8;    // a factor is zero when |factor| < factor * (1 + |t_j|)^n
  double residual = 1e-8;  // on-shell when |res_j| <= residual * (1 + |t_j|)^(n + l - 1)
};

BaeResult bae_residual(std::span<const Complex> t, const ModelParams& params, const BaeTolerances& tol = {});

/// Numeric roots of f, classified.
BetheRoots roots_of(const ExactPoly& f, const ModelParams& params, const BaeTolerances& tol = {});

}  // namespace xxxlab
