#pragma once

// One entry point for "solve M x = b" over either scalar ring: exact
// elimination for Rational, least squares with a residual bound for Complex.

#include <optional>
#include <vector>

#include "xxxlab/exactmath/linalg.hpp"
#include "xxxlab/exactmath/numeric.hpp"

namespace xxxlab {

/// Returns a solution (free variables set to zero) or nullopt when the
/// system is inconsistent (exactly, or beyond tol relative for Complex).
template <class T>
std::optional<std::vector<T>> solve_any(const Matrix<T>& m, const std::vector<T>& b, double tol);

template <>
inline std::optional<QVector> solve_any<Rational>(const QMatrix& m, const QVector& b, double) {
  try {
    return solve_exact(m, b).particular;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Inconsistent) return std::nullopt;
    throw;
  }
}

template <>
inline std::optional<CVector> solve_any<Complex>(const CMatrix& m, const CVector& b, double tol) {
  LeastSquares ls = least_squares(m, b);
  if (!(ls.relative_residual <= tol)) return std::nullopt;
  return ls.x;
}

/// Zero test: literal for exact rings, |x| <= tol * max(1, scale) otherwise.
template <class T>
bool negligible(const T& x, double scale, double tol) {
  if constexpr (is_exact_v<T>) {
    return is_zero(x);
  } else {
    return magnitude(x) <= tol * std::max(1.0, scale);
  }
}

}  // namespace xxxlab
