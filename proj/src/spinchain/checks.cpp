#include "xxxlab/spinchain/checks.hpp"

#include <cmath>

namespace xxxlab {

double operator_norm(const CMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
  return svd.singularValues()(0);
}

CMatrix adjoint(const CMatrix& m) {
  CMatrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = std::conj(m(i, j));
  return t;
}

RttResult rtt_check(const ModelParams& params, Complex u, Complex v) {
  if (std::abs(u - v) < 1e-14) throw Error(ErrorCode::InvalidArgument, "rtt_check needs u != v");
  Monodromy<Complex> mono(params);
  CMatrix Tu[2][2], Tv[2][2];
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      Tu[a][b] = mono.matrix_at(a, b, u);
      Tv[a][b] = mono.matrix_at(a, b, v);
    }
  RttResult r;
  // Relative to the size of the products involved.
  double scale = 1.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) scale = std::max(scale, operator_norm(Tu[a][b]) * operator_norm(Tv[a][b]));
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) {
          CMatrix lhs = (u - v) * commutator(Tu[a][b], Tv[c][d]);
          CMatrix rhs = Tv[c][b] * Tu[a][d] - Tu[c][b] * Tv[a][d];
          r.rtt = std::max(r.rtt, operator_norm(lhs - rhs) / scale);
        }
  // T11(u) T12(v) = (u-v-1)/(u-v) T12(v) T11(u) + 1/(u-v) T12(u) T11(v)
  // T22(u) T12(v) = (u-v+1)/(u-v) T12(v) T22(u) - 1/(u-v) T12(u) T22(v)
  const Complex w = u - v;
  CMatrix e1 = Tu[0][0] * Tv[0][1] - ((w - 1.0) / w) * (Tv[0][1] * Tu[0][0]) - (1.0 / w) * (Tu[0][1] * Tv[0][0]);
  CMatrix e2 = Tu[1][1] * Tv[0][1] - ((w + 1.0) / w) * (Tv[0][1] * Tu[1][1]) + (1.0 / w) * (Tu[0][1] * Tv[1][1]);
  r.exchange = std::max(operator_norm(e1), operator_norm(e2)) / scale;
  return r;
}

NormalityResult normality_check(const ModelParams& params, std::span<const Complex> u_samples) {
  if (!params.is_homogeneous()) throw Error(ErrorCode::PreconditionViolated, "normality check needs homogeneous params");
  Monodromy<Complex> mono(params);
  const int n = params.n;
  NormalityResult r;
  for (Complex u : u_samples) {
    const Complex w = -std::conj(u) - 1.0;
    CMatrix Bu = mono.B_matrix_at(u), Bw = mono.B_matrix_at(w);
    const double scale = std::max(1.0, operator_norm(Bu));
    const double sign = n % 2 ? -1.0 : 1.0;
    r.deviation = std::max(r.deviation, operator_norm(adjoint(Bu) - Complex(sign) * Bw) / scale);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const double sab = (a + b + n) % 2 ? -1.0 : 1.0;
        CMatrix lhs = adjoint(mono.matrix_at(a, b, u));
        CMatrix rhs = Complex(sab) * mono.matrix_at(1 - a, 1 - b, w);
        r.entry_deviation = std::max(r.entry_deviation, operator_norm(lhs - rhs) / scale);
      }
    // (T11 + T22)(u)^† = -(T11 + T22)(-conj(u) - 1) with T = T~ / u^n
    CMatrix Tu = (1.0 / std::pow(u, n)) * Bu, Tw = (1.0 / std::pow(w, n)) * Bw;
    r.series_form_deviation = std::max(r.series_form_deviation, operator_norm(adjoint(Tu) + Tw));
  }
  auto H = hamiltonians_full(mono);
  for (const auto& h : H) {
    double nh = operator_norm(h);
    r.hk_commutator = std::max(r.hk_commutator, operator_norm(commutator(h, adjoint(h))) / std::max(1.0, nh * nh));
  }
  return r;
}

}  // namespace xxxlab
