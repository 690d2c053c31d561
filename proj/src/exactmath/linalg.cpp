#include "xxxlab/exactmath/linalg.hpp"

#include <utility>

namespace xxxlab {

namespace {

struct Echelon {
  std::vector<std::vector<Integer>> rows;  // integer echelon form, augmented
  std::vector<std::size_t> pivot_cols;     // pivot column of row r
};

// Fraction-free forward elimination on the first `main_cols` columns of an
// augmented integer matrix.
Echelon bareiss(std::vector<std::vector<Integer>> a, std::size_t main_cols) {
  Echelon e;
  const std::size_t m = a.size();
  const std::size_t total = m ? a[0].size() : 0;
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < main_cols && r < m; ++c) {
    std::size_t piv = m;
    Integer best = 0;
    for (std::size_t i = r; i < m; ++i) {
      Integer mag = abs(a[i][c]);
      if (mag > best) {
        best = mag;
        piv = i;
      }
    }
    if (piv == m) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < m; ++i) {
      for (std::size_t j = c + 1; j < total; ++j) {
        Integer t = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = std::move(t);
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    e.pivot_cols.push_back(c);
    ++r;
  }
  e.rows = std::move(a);
  return e;
}

// Scales every row of [M | B] to integers.
std::vector<std::vector<Integer>> integer_rows(const QMatrix& m, const QMatrix* b) {
  const std::size_t extra = b ? b->cols() : 0;
  std::vector<std::vector<Integer>> rows(m.rows(), std::vector<Integer>(m.cols() + extra));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    auto fold = [&l](const Rational& q) { mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t()); };
    for (std::size_t j = 0; j < m.cols(); ++j) fold(m(i, j));
    for (std::size_t j = 0; j < extra; ++j) fold((*b)(i, j));
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j).get_num() * (l / m(i, j).get_den());
    for (std::size_t j = 0; j < extra; ++j)
      rows[i][m.cols() + j] = (*b)(i, j).get_num() * (l / (*b)(i, j).get_den());
  }
  return rows;
}

// Back substitution for one right-hand-side column (or the homogeneous
// system when rhs_col is npos) with given values for the free variables.
QVector back_substitute(const Echelon& e, std::size_t n, std::size_t rhs_col, const QVector& free_values) {
  QVector x = free_values;
  x.resize(n);
  for (std::size_t r = e.pivot_cols.size(); r-- > 0;) {
    const std::size_t c = e.pivot_cols[r];
    const auto& row = e.rows[r];
    Rational acc = rhs_col == static_cast<std::size_t>(-1) ? Rational(0) : Rational(row[rhs_col]);
    for (std::size_t j = c + 1; j < n; ++j)
      if (row[j] != 0 && sgn(x[j]) != 0) acc -= Rational(row[j]) * x[j];
    x[c] = acc / Rational(row[c]);
  }
  return x;
}

std::vector<bool> pivot_mask(const Echelon& e, std::size_t n) {
  std::vector<bool> is_pivot(n, false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  return is_pivot;
}

}  // namespace

SolutionSet solve_exact(const QMatrix& m, std::span<const Rational> rhs) {
  if (rhs.size() != m.rows()) throw Error(ErrorCode::InvalidArgument, "rhs length differs from row count");
  QMatrix b(m.rows(), 1);
  for (std::size_t i = 0; i < rhs.size(); ++i) b(i, 0) = rhs[i];
  const std::size_t n = m.cols();
  Echelon e = bareiss(integer_rows(m, &b), n);
  for (std::size_t r = e.pivot_cols.size(); r < e.rows.size(); ++r)
    if (e.rows[r][n] != 0) throw Error(ErrorCode::Inconsistent, "linear system has no solution");

  SolutionSet out;
  out.particular = back_substitute(e, n, n, QVector(n, Rational(0)));
  auto is_pivot = pivot_mask(e, n);
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    QVector free(n, Rational(0));
    free[f] = 1;
    out.kernel.push_back(back_substitute(e, n, static_cast<std::size_t>(-1), free));
  }
  return out;
}

std::vector<QVector> kernel_basis(const QMatrix& m) {
  QVector zero(m.rows(), Rational(0));
  return solve_exact(m, zero).kernel;
}

std::size_t rank(const QMatrix& m) { return bareiss(integer_rows(m, nullptr), m.cols()).pivot_cols.size(); }

QMatrix solve_matrix(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != a.rows())
    throw Error(ErrorCode::InvalidArgument, "solve_matrix needs a square system");
  const std::size_t n = a.cols();
  Echelon e = bareiss(integer_rows(a, &b), n);
  if (e.pivot_cols.size() != n) throw Error(ErrorCode::Inconsistent, "singular matrix");
  QMatrix x(n, b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    QVector col = back_substitute(e, n, n + j, QVector(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) x(i, j) = col[i];
  }
  return x;
}

QMatrix inverse(const QMatrix& a) { return solve_matrix(a, QMatrix::identity(a.rows())); }

QVector coordinates_in(const QMatrix& basis, std::span<const Rational> v) {
  SolutionSet s = solve_exact(basis, v);
  if (!s.kernel.empty()) throw Error(ErrorCode::InvalidArgument, "basis columns are linearly dependent");
  return s.particular;
}

}  // namespace xxxlab

namespace xxxlab {

ExactPoly interpolate(std::span<const Rational> xs, std::span<const Rational> ys) {
  if (xs.size() != ys.size()) throw Error(ErrorCode::InvalidArgument, "interpolate: size mismatch");
  const std::size_t k = xs.size();
  std::vector<Rational> dd(ys.begin(), ys.end());
  for (std::size_t j = 1; j < k; ++j)
    for (std::size_t i = k - 1; i >= j; --i) {
      Rational den = xs[i] - xs[i - j];
      if (sgn(den) == 0) throw Error(ErrorCode::InterpolationDegeneracy, "repeated interpolation node");
      dd[i] = (dd[i] - dd[i - 1]) / den;
      if (i == j) break;
    }
  ExactPoly p;
  for (std::size_t i = k; i-- > 0;) p = p * ExactPoly::linear_root(xs[i]) + ExactPoly::constant(dd[i]);
  return p;
}

ExactPoly characteristic_polynomial(const QMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw Error(ErrorCode::InvalidArgument, "characteristic polynomial needs a square matrix");
  std::vector<Rational> c(n + 1, Rational(0));
  c[n] = 1;
  QMatrix M(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    M = m * M + c[n - k + 1] * QMatrix::identity(n);
    QMatrix AM = m * M;
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += AM(i, i);
    c[n - k] = -tr / Rational(static_cast<long>(k));
  }
  return ExactPoly(std::move(c));
}

QMatrix matrix_polynomial(const ExactPoly& p, const QMatrix& m) {
  const std::size_t d = m.rows();
  QMatrix acc(d, d);
  for (long i = p.degree(); i >= 0; --i) acc = acc * m + p.coeff(i) * QMatrix::identity(d);
  return acc;
}

Rational determinant(const QMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidArgument, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  // Row scaling to integers multiplies the determinant by the row scales.
  Rational scale = 1;
  std::vector<std::vector<Integer>> rows(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = m(i, j).get_num() * (l / m(i, j).get_den());
    scale *= Rational(l);
  }
  Integer prev = 1;
  int sign = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t i = c; i < n; ++i)
      if (rows[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(rows[piv], rows[c]);
      sign = -sign;
    }
    for (std::size_t i = c + 1; i < n; ++i) {
      for (std::size_t j = c + 1; j < n; ++j) {
        Integer t = rows[c][c] * rows[i][j] - rows[i][c] * rows[c][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        rows[i][j] = std::move(t);
      }
      rows[i][c] = 0;
    }
    prev = rows[c][c];
  }
  return Rational(sign * rows[n - 1][n - 1]) / scale;
}

}  // namespace xxxlab
