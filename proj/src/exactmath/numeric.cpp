#include "xxxlab/exactmath/numeric.hpp"

#include <algorithm>
#include <cmath>

namespace xxxlab {

Eigen::MatrixXcd to_eigen(const CMatrix& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

CMatrix from_eigen(const Eigen::MatrixXcd& e) {
  CMatrix m(e.rows(), e.cols());
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
  return m;
}

Eigen::VectorXcd to_eigen(std::span<const Complex> v) {
  Eigen::VectorXcd e(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) e(i) = v[i];
  return e;
}

CVector from_eigen(const Eigen::VectorXcd& e) { return CVector(e.data(), e.data() + e.size()); }

CMatrix to_complex(const Matrix<Rational>& m) {
  return m.map<Complex>([](const Rational& q) { return Complex(to_double(q), 0.0); });
}

CVector to_complex(std::span<const Rational> v) {
  CVector out;
  out.reserve(v.size());
  for (const auto& q : v) out.emplace_back(to_double(q), 0.0);
  return out;
}

LeastSquares least_squares(const CMatrix& m, std::span<const Complex> rhs) {
  LeastSquares out;
  Eigen::MatrixXcd a = to_eigen(m);
  Eigen::VectorXcd b = to_eigen(rhs);
  if (a.cols() == 0) {
    out.relative_residual = b.size() ? b.cwiseAbs().maxCoeff() / std::max(1.0, b.cwiseAbs().maxCoeff()) : 0.0;
    return out;
  }
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(a);
  Eigen::VectorXcd x = cod.solve(b);
  out.rank = static_cast<std::size_t>(cod.rank());
  double scale = std::max({1.0, b.size() ? b.cwiseAbs().maxCoeff() : 0.0, a.cwiseAbs().maxCoeff()});
  Eigen::VectorXcd r = a * x - b;
  out.relative_residual = r.size() ? r.cwiseAbs().maxCoeff() / scale : 0.0;
  out.x = from_eigen(x);
  return out;
}

CVector polynomial_roots(const FloatPoly& p_in) {
  FloatPoly p = p_in;
  p.normalize(0.0);
  while (!p.coeffs().empty() && p.coeffs().back() == Complex{}) p.normalize(0.0);
  const long deg = p.degree();
  if (deg <= 0) return {};
  const auto& c = p.coeffs();
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
  for (long i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (long i = 0; i < deg; ++i) comp(i, deg - 1) = -c[i] / c[deg];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  CVector roots = from_eigen(es.eigenvalues());
  FloatPoly dp = derivative(p);
  for (auto& r : roots) {
    for (int it = 0; it < 8; ++it) {
      Complex f = p.evaluate(r), df = dp.evaluate(r);
      if (std::abs(df) < 1e-300) break;
      Complex step = f / df;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      // Near a multiple root Newton can walk away; keep only improving steps.
      if (std::abs(p.evaluate(r - step)) > std::abs(f)) break;
      r -= step;
    }
  }
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

double max_abs(std::span<const Complex> v) {
  double m = 0.0;
  for (auto x : v) m = std::max(m, std::abs(x));
  return m;
}

double norm2(std::span<const Complex> v) {
  double s = 0.0;
  for (auto x : v) s += std::norm(x);
  return std::sqrt(s);
}

double frobenius(const CMatrix& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) s += std::norm(m(i, j));
  return std::sqrt(s);
}

}  // namespace xxxlab
