#include "xxxlab/diffop/bethe_roots.hpp"

#include <cmath>

#include "xxxlab/exactmath/errors.hpp"
#include "xxxlab/exactmath/numeric.hpp"

namespace xxxlab {

const char* to_string(RootClass c) {
  switch (c) {
    case RootClass::admissible:
      return "admissible";
    case RootClass::non_admissible:
      return "non-admissible";
    case RootClass::off_shell:
      return "off-shell";
  }
  return "?";
}

BaeResult bae_residual(std::span<const Complex> t, const ModelParams& params, const BaeTolerances& tol) {
  if (static_cast<int>(t.size()) != params.l) throw Error(ErrorCode::InvalidArgument, "expected l roots");
  const int n = params.n;
  const std::size_t l = t.size();
  BaeResult out;
  out.residuals.resize(l);
  bool degenerate = false, off_shell = false;
  for (std::size_t j = 0; j < l; ++j) {
    const double zero_tol = tol.factor * std::pow(1.0 + std::abs(t[j]), n);
    auto is_zero_factor = [&](Complex f) { return std::abs(f) < zero_tol; };
    Complex lhs = 1.0, rhs = 1.0;
    for (int s = 0; s < n; ++s) {
      Complex fl = t[j] - to_double(params.z[s]) + 1.0 + to_double(params.m[s]);
      Complex fr = t[j] - to_double(params.z[s]) + 1.0;
      degenerate |= is_zero_factor(fl) || is_zero_factor(fr);
      lhs *= fl;
      rhs *= fr;
    }
    for (std::size_t k = 0; k < l; ++k) {
      if (k == j) continue;
      Complex diff = t[j] - t[k];
      degenerate |= is_zero_factor(diff) || is_zero_factor(diff - 1.0) || is_zero_factor(diff + 1.0);
      lhs *= diff - 1.0;
      rhs *= diff + 1.0;
    }
    out.residuals[j] = lhs - rhs;
    const double res_tol = tol.residual * std::pow(1.0 + std::abs(t[j]), n + static_cast<int>(l) - 1);
    off_shell |= std::abs(out.residuals[j]) > res_tol;
  }
  out.classification =
      degenerate ? RootClass::non_admissible : (off_shell ? RootClass::off_shell : RootClass::admissible);
  return out;
}

BetheRoots roots_of(const ExactPoly& f, const ModelParams& params, const BaeTolerances& tol) {
  BetheRoots r;
  r.t = polynomial_roots(to_float(f));
  r.classification = bae_residual(r.t, params, tol).classification;
  return r;
}

}  // namespace xxxlab
