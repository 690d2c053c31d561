#pragma once

// Identity checks on the monodromy: RTT relations, quantum determinant and
// normality of the transfer matrix.

#include <span>
#include <vector>

#include "xxxlab/diffop/model.hpp"
#include "xxxlab/exactmath/numeric.hpp"
#include "xxxlab/spinchain/monodromy.hpp"

namespace xxxlab {

struct RttResult {
  double rtt = 0.0;          // max over a,b,c,d of the defining-relation residual
  double exchange = 0.0;     // max residual of the two T_aa(u) T_12(v) exchange relations
};

/// Operator-norm residuals at complex points u != v (InvalidArgument if u == v).
RttResult rtt_check(const ModelParams& params, Complex u, Complex v);

struct NormalityResult {
  // max over samples of ||B~(u)^† - (-1)^n B~(-conj(u)-1)|| / ||B~(u)||, B~ = T~11 + T~22
  double deviation = 0.0;
  // same for T~_ab(u)^† = (-1)^(a+b+n) T~_{3-a,3-b}(-conj(u)-1), all a, b
  double entry_deviation = 0.0;
  // ||(T11+T22)(u)^† + (T11+T22)(-conj(u)-1)|| with T = T~ / u^n, reported
  // for comparison; the two sides differ by a scalar factor and this is not small
  double series_form_deviation = 0.0;
  double hk_commutator = 0.0;     // max_k ||[H_k, H_k^†]|| / max(1, ||H_k||^2)
};

/// Homogeneous params only.
NormalityResult normality_check(const ModelParams& params, std::span<const Complex> u_samples);

/// max coefficient of T~11(u)T~22(u-1) - T~12(u)T~21(u-1) - a(u)d(u-1), over
/// all basis vectors. Exactly zero in rational mode when the identity holds.
template <class T>
double qdet_deviation(const ModelParams& params) {
  Monodromy<T> mono(params);
  const std::size_t N = mono.dim();
  Poly<T> ad = lift_poly<T>(params.a() * shift(params.d(), -1));
  double worst = 0.0;
  std::vector<T> e(N, T(0));
  for (std::size_t j = 0; j < N; ++j) {
    e[j] = T(1);
    VecPoly<T> x = mono.apply(0, 0, mono.apply(1, 1, e, -1));
    VecPoly<T> y = mono.apply(0, 1, mono.apply(1, 0, e, -1));
    const std::size_t deg = std::max({x.size(), y.size(), ad.coeffs().size()});
    for (std::size_t k = 0; k < deg; ++k)
      for (std::size_t i = 0; i < N; ++i) {
        T r = (k < x.size() ? x[k][i] : T(0)) - (k < y.size() ? y[k][i] : T(0));
        if (i == j) r -= ad.coeff(k);
        worst = std::max(worst, magnitude(r));
      }
    e[j] = T(0);
  }
  return worst;
}

/// Spectral norm.
double operator_norm(const CMatrix& m);

CMatrix adjoint(const CMatrix& m);

}  // namespace xxxlab
