#pragma once

// Wronskian pairs: two-dimensional polynomial kernels of D_h spanned by a
// monic f of degree l and a monic g of degree l~ with no u^l term.

#include <optional>
#include <string>
#include <vector>

#include "xxxlab/diffop/bethe_roots.hpp"
#include "xxxlab/diffop/difference_operator.hpp"

namespace xxxlab {

enum class CertStatus { exact, numeric, failed };
const char* to_string(CertStatus s);

struct PairCertificate {
  CertStatus status = CertStatus::failed;
  double wronskian_residual = 0.0;  // max |coeff| of Wr(f,g) - target
  double f_residual = 0.0;          // max |coeff| of D_h f
  double g_residual = 0.0;          // max |coeff| of D_h g
  bool normalized = false;
  std::optional<ExactPoly> wronskian_defect;  // exact pairs only
};

struct WronskiPair {
  bool exact = false;
  // exact data (valid when exact)
  ExactPoly f, g;
  std::vector<Rational> h;
  // numeric data (always filled)
  FloatPoly f_num, g_num;
  std::vector<Complex> h_num;
  BetheRoots roots;
  PairCertificate certificate;
};

struct VerifyOptions {
  double tol = 1e-10;  // relative bound for numeric certificates
};

/// C(n,l) - C(n,l-1). OutOfDomain unless all weights are 1; needs 2l <= n.
long long expected_count(const ModelParams& params);

/// Checks the Wronskian identity, both kernel equations and the
/// normalization. Never throws on mathematical failure.
PairCertificate verify_pair(const WronskiPair& pair, const ModelParams& params, const VerifyOptions& options = {});

/// Completes f to a pair: g solves wronskian(f, g) = (l - l~) W(u) with u^l
/// coefficient `gauge` (0 gives the stored normalization). Throws
/// NoCompanion when no such g exists.
WronskiPair pair_from_f(const ExactPoly& f, const ModelParams& params, const Rational& gauge = 0);

/// Numeric pair at a spectral point h (full h_1..h_n).
WronskiPair pair_from_h(const std::vector<Complex>& h, const ModelParams& params, const VerifyOptions& options = {});

/// Exact pair at a rational spectral point; nullopt if h is not a point.
std::optional<WronskiPair> pair_from_exact_h(const std::vector<Rational>& h, const ModelParams& params);

/// Fills the numeric mirror fields from the exact ones.
void fill_numeric(WronskiPair& pair, const ModelParams& params);

}  // namespace xxxlab
