#include "xxxlab/diffop/difference_operator.hpp"

namespace xxxlab {

std::pair<Rational, Rational> q12_offsets(const ModelParams& params) {
  Rational o1 = 0;
  for (int i = 0; i < params.n; ++i) o1 += params.m[i] - 2 * params.z[i];
  Rational o2 = Rational(params.l) * (Rational(params.l - 1) - params.sum_m());
  for (int i = 0; i < params.n; ++i)
    for (int j = i + 1; j < params.n; ++j)
      o2 += params.z[i] * params.z[j] + (params.z[i] - params.m[i]) * (params.z[j] - params.m[j]);
  return {o1, o2};
}

Rational triangular_diagonal(const ModelParams& params, int i) {
  return Rational(i) * (params.sum_m() - 2 * params.l + i + 1);
}

}  // namespace xxxlab
