#pragma once

// Double-precision helpers that sit next to the exact code: Eigen
// conversions, least squares, polynomial roots.

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "xxxlab/exactmath/matrix.hpp"
#include "xxxlab/exactmath/poly.hpp"

namespace xxxlab {

using CVector = std::vector<Complex>;
using CMatrix = Matrix<Complex>;

Eigen::MatrixXcd to_eigen(const CMatrix& m);
CMatrix from_eigen(const Eigen::MatrixXcd& m);
Eigen::VectorXcd to_eigen(std::span<const Complex> v);
CVector from_eigen(const Eigen::VectorXcd& v);

CMatrix to_complex(const Matrix<Rational>& m);
CVector to_complex(std::span<const Rational> v);

/// Least-squares solution of m x = rhs together with the relative residual
/// ||m x - rhs|| / max(1, ||rhs||, ||m||_max).
struct LeastSquares {
  CVector x;
  double relative_residual = 0.0;
  std::size_t rank = 0;
};
LeastSquares least_squares(const CMatrix& m, std::span<const Complex> rhs);

/// All complex roots of p (with multiplicity), from the companion matrix and
/// polished by Newton steps on p.
CVector polynomial_roots(const FloatPoly& p);

double max_abs(std::span<const Complex> v);
double norm2(std::span<const Complex> v);

/// Frobenius norm.
double frobenius(const CMatrix& m);

}  // namespace xxxlab
