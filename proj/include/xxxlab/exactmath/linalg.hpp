#pragma once

// Exact dense linear algebra over the rationals.
//
// Rows are scaled to integers and reduced with fraction-free (Bareiss)
// elimination. The pivot in each column is the candidate with the largest
// absolute value, ties going to the lowest row index, so results are
// deterministic. Back substitution runs in rationals.

#include <cstddef>
#include <span>
#include <vector>

#include "xxxlab/exactmath/matrix.hpp"
#include "xxxlab/exactmath/rational.hpp"

namespace xxxlab {

using QVector = std::vector<Rational>;
using QMatrix = Matrix<Rational>;

struct SolutionSet {
  QVector particular;           // free variables set to zero
  std::vector<QVector> kernel;  // one vector per free column
};

/// Solves M x = rhs. Throws Error(Inconsistent) when there is no solution.
SolutionSet solve_exact(const QMatrix& m, std::span<const Rational> rhs);

/// Basis of {x : M x = 0}.
std::vector<QVector> kernel_basis(const QMatrix& m);

std::size_t rank(const QMatrix& m);

/// Solves A X = B for every column of B; A must be square and nonsingular
/// (throws Error(Inconsistent) otherwise).
QMatrix solve_matrix(const QMatrix& a, const QMatrix& b);

QMatrix inverse(const QMatrix& a);

/// Coordinates c with basis * c = v for a full-column-rank basis; throws
/// Error(Inconsistent) if v is outside the span.
QVector coordinates_in(const QMatrix& basis, std::span<const Rational> v);

}  // namespace xxxlab

#include "xxxlab/exactmath/poly.hpp"

namespace xxxlab {

/// The polynomial of degree < xs.size() through (xs[i], ys[i]); xs distinct.
ExactPoly interpolate(std::span<const Rational> xs, std::span<const Rational> ys);

/// Characteristic polynomial det(x - M), by the Faddeev-LeVerrier recursion.
ExactPoly characteristic_polynomial(const QMatrix& m);

/// p(M) by Horner's rule.
QMatrix matrix_polynomial(const ExactPoly& p, const QMatrix& m);

/// Determinant by fraction-free elimination.
Rational determinant(const QMatrix& m);

}  // namespace xxxlab
