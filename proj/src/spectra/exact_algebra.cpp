#include "xxxlab/spectra/exact_algebra.hpp"

#include <limits>

#include "xxxlab/exactmath/numeric.hpp"
#include "xxxlab/spinchain/monodromy.hpp"
#include "xxxlab/spinchain/singular.hpp"

namespace xxxlab {

std::vector<Complex> ExactSpectralAlgebra::tuple_at(std::size_t r) const {
  std::vector<Complex> t;
  for (const auto& e : h) t.push_back(e.embed(roots.at(r)));
  return t;
}

std::pair<std::size_t, double> ExactSpectralAlgebra::nearest_root(const std::vector<Complex>& target) const {
  std::pair<std::size_t, double> best{roots.size(), std::numeric_limits<double>::infinity()};
  for (std::size_t r = 0; r < roots.size(); ++r) {
    auto t = tuple_at(r);
    double d = 0.0;
    for (std::size_t k = 0; k < t.size() && k < target.size(); ++k) d = std::max(d, std::abs(t[k] - target[k]));
    if (d < best.second) best = {r, d};
  }
  return best;
}

ExactSpectralAlgebra exact_spectral_algebra(const ModelParams& params, int attempts) {
  const int n = params.n, l = params.l;
  ExactSpectralAlgebra A;
  A.n = n;
  A.l = l;
  A.basis = singular_basis_exact(params, l).basis;
  const std::size_t d = A.basis.cols();
  Monodromy<Rational> mono(params);
  for (const auto& Hw : hamiltonians_on_weight(mono, l)) {
    QMatrix img = Hw * A.basis;
    QMatrix M(d, d);
    for (std::size_t j = 0; j < d; ++j) {
      auto c = coordinates_in(A.basis, img.column(j));
      for (std::size_t i = 0; i < d; ++i) M(i, j) = c[i];
    }
    A.H.push_back(std::move(M));
  }
  for (std::size_t i = 0; i < A.H.size(); ++i)
    for (std::size_t j = i + 1; j < A.H.size(); ++j)
      if (!commutator(A.H[i], A.H[j]).is_zero()) throw Error(ErrorCode::NotCommuting, "exact Hamiltonians do not commute");

  for (int attempt = 0; attempt < attempts; ++attempt) {
    std::vector<Rational> c(n + 1, Rational(0));
    QMatrix X(d, d);
    for (int k = 2; k <= n; ++k) {
      Rational ck = 1;
      for (int e = 0; e <= attempt; ++e) ck *= (k - 1);
      if (attempt % 2 == 1 && k % 2 == 0) ck = -ck;
      c[k] = ck;
      X += ck * A.H[k];
    }
    if (n < 2 || d == 1) X = QMatrix(d, d);
    // Krylov basis from a fixed start vector
    QVector v(d, Rational(1));
    for (std::size_t i = 0; i < d; ++i) v[i] = Rational(static_cast<long>(i + 1 + attempt));
    std::vector<QVector> cols{v};
    for (std::size_t i = 1; i <= d; ++i) cols.push_back(X.apply(cols.back()));
    QMatrix K = QMatrix::from_columns(std::vector<QVector>(cols.begin(), cols.begin() + static_cast<long>(d)), d);
    if (rank(K) < d) continue;
    auto p = coordinates_in(K, cols[d]);
    std::vector<Rational> chi(d + 1);
    for (std::size_t i = 0; i < d; ++i) chi[i] = -p[i];
    chi[d] = 1;
    ExactPoly chip(std::move(chi));
    if (d > 1 && gcd(chip, derivative(chip)).degree() > 0) continue;
    A.combination = c;
    A.chi = std::make_shared<const ExactPoly>(chip);
    A.P.clear();
    for (const auto& M : A.H) {
      auto q = coordinates_in(K, M.apply(v));
      ExactPoly Pk(std::vector<Rational>(q.begin(), q.end()));
      if (!(matrix_polynomial(Pk, X) == M)) throw Error(ErrorCode::NotCommuting, "H_k is not a polynomial in the generator");
      A.P.push_back(std::move(Pk));
    }
    A.h.clear();
    for (int k = 1; k <= n; ++k) A.h.emplace_back(A.chi, A.P[k]);
    A.roots = polynomial_roots(to_float(chip));
    return A;
  }
  throw Error(ErrorCode::ClusteringAmbiguous, "no generator with squarefree characteristic polynomial");
}

}  // namespace xxxlab
