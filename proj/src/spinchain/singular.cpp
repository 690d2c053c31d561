#include "xxxlab/spinchain/singular.hpp"

#include "xxxlab/spinchain/spin_space.hpp"

namespace xxxlab {

namespace {

QMatrix gl2_between(int a, int b, int n, int l_from, int l_to) {
  auto from = weight_indices(n, l_from);
  auto to_pos = weight_positions(n, l_to);
  const std::size_t rows = l_to >= 0 && l_to <= n ? weight_indices(n, l_to).size() : 0;
  QMatrix m(rows, from.size());
  std::vector<Rational> e(spin_dim(n), Rational(0));
  for (std::size_t j = 0; j < from.size(); ++j) {
    e[from[j]] = 1;
    auto col = apply_gl2<Rational>(a, b, n, e);
    e[from[j]] = 0;
    for (std::size_t t = 0; t < col.size(); ++t)
      if (sgn(col[t]) != 0) m(to_pos[t], j) = col[t];
  }
  return m;
}

void check_level(const ModelParams& params, int l) {
  params.require_spin_chain();
  if (l < 0 || 2 * l > params.n) throw Error(ErrorCode::PreconditionViolated, "singular subspace needs 2l <= n");
}

}  // namespace

QMatrix e12_weight_matrix(int n, int l) { return gl2_between(0, 1, n, l, l - 1); }
QMatrix e21_weight_matrix(int n, int l) { return gl2_between(1, 0, n, l, l + 1); }

SubspaceBasis<Rational> singular_basis_exact(const ModelParams& params, int l) {
  check_level(params, l);
  SubspaceBasis<Rational> s;
  s.n = params.n;
  s.l = l;
  s.label = "singular";
  s.weight = weight_indices(params.n, l);
  if (l == 0) {
    s.basis = QMatrix::identity(1);
    return s;
  }
  auto ker = kernel_basis(e12_weight_matrix(params.n, l));
  s.basis = QMatrix::from_columns(ker, s.weight.size());
  return s;
}

SubspaceBasis<Complex> weight_singular_basis(const ModelParams& params, int l) {
  check_level(params, l);
  SubspaceBasis<Complex> s;
  s.n = params.n;
  s.l = l;
  s.label = "singular";
  s.weight = weight_indices(params.n, l);
  const std::size_t N = s.weight.size();
  if (l == 0) {
    s.basis = CMatrix::identity(1);
    return s;
  }
  QMatrix e12 = e12_weight_matrix(params.n, l);
  Eigen::MatrixXd a(e12.rows(), e12.cols());
  for (std::size_t i = 0; i < e12.rows(); ++i)
    for (std::size_t j = 0; j < e12.cols(); ++j) a(i, j) = to_double(e12(i, j));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = 1e-10 * std::max(1.0, sv.size() ? sv(0) : 0.0);
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++rank;
  const std::size_t k = N - rank;
  s.basis = CMatrix(N, k);
  const auto& V = svd.matrixV();
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < N; ++i) s.basis(i, j) = V(i, rank + j);
  return s;
}

}  // namespace xxxlab
