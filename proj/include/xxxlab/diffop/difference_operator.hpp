#pragma once

// The second-order difference operator d(u) - B(u) tau^-1 + a(u) tau^-2,
// where tau^-1 w(u) = w(u-1), and the polynomial systems attached to it.
//
// The coordinates h = (h_1..h_n) are the lower coefficients of
// B(u) = 2u^n + h_1 u^(n-1) + ... + h_n. Every routine is generic over the
// scalar ring: Rational, Complex, or AlgebraElement (exact arithmetic on all
// points of a finite spectrum at once).

#include <span>
#include <utility>
#include <vector>

#include "xxxlab/diffop/model.hpp"
#include "xxxlab/exactmath/errors.hpp"
#include "xxxlab/exactmath/poly.hpp"
#include "xxxlab/exactmath/solve_any.hpp"

namespace xxxlab {

template <class T>
struct DifferenceOperator {
  Poly<T> d;
  Poly<T> B;
  Poly<T> a;

  Poly<T> apply(const Poly<T>& w) const { return d * w - B * shift(w, -1) + a * shift(w, -2); }
};

/// 2u^n + h_1 u^(n-1) + ... + h_n
template <class T>
Poly<T> b_poly(std::span<const T> h) {
  const std::size_t n = h.size();
  std::vector<T> c(n + 1, T(0));
  c[n] = T(2);
  for (std::size_t k = 0; k < n; ++k) c[n - 1 - k] = h[k];
  return Poly<T>(std::move(c));
}

/// (h_1..h_n) read back from B.
template <class T>
std::vector<T> h_from_b(const Poly<T>& B, int n) {
  std::vector<T> h(n);
  for (int k = 1; k <= n; ++k) h[k - 1] = B.coeff(n - k);
  return h;
}

template <class T>
DifferenceOperator<T> make_operator(const ModelParams& params, std::span<const T> h) {
  if (static_cast<int>(h.size()) != params.n) throw Error(ErrorCode::InvalidArgument, "h must have n entries");
  return {lift_poly<T>(params.d()), b_poly<T>(h), lift_poly<T>(params.a())};
}

/// The two affine constraints singled out by the degree count.
std::pair<Rational, Rational> q12_offsets(const ModelParams& params);

/// (q_1(h), q_2(h)).
template <class T>
std::pair<T, T> q12(std::span<const T> h, const ModelParams& params) {
  if (static_cast<int>(h.size()) != params.n) throw Error(ErrorCode::InvalidArgument, "h must have n entries");
  auto [o1, o2] = q12_offsets(params);
  T h2 = params.n >= 2 ? h[1] : T(0);
  return {h[0] - lift<T>(o1), h2 - lift<T>(o2)};
}

/// p(u, a) = u^l + a_1 u^(l-1) + ... + a_l
template <class T>
Poly<T> monic_from_tail(std::span<const T> a) {
  const std::size_t l = a.size();
  std::vector<T> c(l + 1, T(0));
  c[l] = T(1);
  for (std::size_t i = 0; i < l; ++i) c[l - 1 - i] = a[i];
  return Poly<T>(std::move(c));
}

/// (a_1..a_l) of a monic degree-l polynomial.
template <class T>
std::vector<T> tail_of_monic(const Poly<T>& p) {
  const long l = p.degree();
  std::vector<T> a(l > 0 ? l : 0);
  for (long i = 0; i < l; ++i) a[i] = p.coeff(l - 1 - i);
  return a;
}

namespace detail {

template <class T>
double h_scale(std::span<const T> h) {
  double s = 1.0;
  for (const auto& x : h) s = std::max(s, magnitude(x));
  return s;
}

template <class T>
void require_q12(std::span<const T> h, const ModelParams& params, double tol) {
  auto [q1, q2] = q12<T>(h, params);
  double sc = h_scale(h);
  if (!negligible(q1, sc, tol) || (params.n >= 2 && !negligible(q2, sc, tol)))
    throw Error(ErrorCode::PreconditionViolated, "q1(h) or q2(h) is nonzero");
}

// Coefficients of D(p) from u^(l+n-3) down to u^0 without the q1/q2 check.
template <class T>
std::vector<T> raw_residuals(const DifferenceOperator<T>& D, const Poly<T>& p, int n, int l) {
  Poly<T> r = D.apply(p);
  const int top = l + n - 3;
  std::vector<T> out;
  out.reserve(top >= 0 ? top + 1 : 0);
  for (int k = top; k >= 0; --k) out.push_back(r.coeff(static_cast<std::size_t>(k)));
  return out;
}

}  // namespace detail

/// (q_3..q_{l+n}): coefficients of D_h p(u, a) from u^(l+n-3) down to u^0.
/// Throws PreconditionViolated unless q1(h) = q2(h) = 0 (to tol for Complex).
template <class T>
std::vector<T> residual_system(std::span<const T> a, std::span<const T> h, const ModelParams& params,
                               double tol = 1e-9) {
  if (static_cast<int>(a.size()) != params.l) throw Error(ErrorCode::InvalidArgument, "a must have l entries");
  detail::require_q12(h, params, tol);
  return detail::raw_residuals(make_operator<T>(params, h), monic_from_tail(a), params.n, params.l);
}

/// i (sum m - 2l + i + 1): diagonal of the triangular part of the system.
Rational triangular_diagonal(const ModelParams& params, int i);

template <class T>
struct TriangularSolution {
  std::vector<T> a;     // a_1..a_l solving q_3..q_{l+2} = 0
  std::vector<T> rest;  // q_{l+3}..q_{l+n} at (a, h)
};

/// Solves the triangular part of the system for a(h) and evaluates the
/// remaining equations. q1(h) = q2(h) = 0 is assumed, not checked.
template <class T>
TriangularSolution<T> triangular_solve(std::span<const T> h, const ModelParams& params) {
  if (!params.separating()) throw Error(ErrorCode::NotSeparating, "(m, l) is not separating");
  const int n = params.n, l = params.l;
  const auto D = make_operator<T>(params, h);
  std::vector<T> a(l, T(0));
  // Columns of the linear map a -> residuals, read off at unit vectors.
  const std::vector<T> c0 = detail::raw_residuals(D, monic_from_tail<T>(a), n, l);
  std::vector<std::vector<T>> cols(l);
  for (int j = 0; j < l; ++j) {
    std::vector<T> e(l, T(0));
    e[j] = T(1);
    auto r = detail::raw_residuals(D, monic_from_tail<T>(e), n, l);
    for (std::size_t k = 0; k < r.size(); ++k) r[k] -= c0[k];
    cols[j] = std::move(r);
  }
  for (int i = 0; i < l; ++i) {
    T acc = c0[i];
    for (int j = 0; j < i; ++j) acc += cols[j][i] * a[j];
    a[i] = (T(0) - acc) / lift<T>(triangular_diagonal(params, i + 1));
  }
  auto all = detail::raw_residuals(D, monic_from_tail<T>(a), n, l);
  TriangularSolution<T> out;
  out.rest.assign(all.begin() + l, all.end());
  out.a = std::move(a);
  return out;
}

struct KernelOptions {
  double tol = 1e-9;      // relative residual bound for Complex scalars
  Rational gauge = 0;     // u^l coefficient imposed when degree > l
};

/// Monic kernel element of D_h of the given degree.
///
/// degree == l: triangular solve for a_1..a_l, then the remaining equations
/// are checked. Any other degree: a linear solve with the u^l coefficient set
/// to options.gauge when degree > l. Throws NotSeparating, NoKernelElement or
/// PreconditionViolated.
template <class T>
Poly<T> kernel_poly(std::span<const T> h, long degree, const ModelParams& params, const KernelOptions& options = {}) {
  detail::require_q12(h, params, options.tol);
  const double sc = detail::h_scale(h);

  if (degree == params.l) {
    auto tri = triangular_solve<T>(h, params);
    Poly<T> p = monic_from_tail<T>(tri.a);
    double rs = sc * std::max(1.0, max_abs_coeff(p));
    for (const auto& x : tri.rest)
      if (!negligible(x, rs, options.tol)) throw Error(ErrorCode::NoKernelElement, "h is not a point of the scheme");
    return p;
  }

  if (degree < 0) throw Error(ErrorCode::InvalidArgument, "negative degree");
  const auto D = make_operator<T>(params, h);
  const int n = params.n;
  const bool gauged = degree > params.l;
  std::vector<long> unknowns;
  for (long k = 0; k < degree; ++k)
    if (!(gauged && k == params.l)) unknowns.push_back(k);
  Poly<T> fixed = Poly<T>::monomial(degree);
  if (gauged) fixed += Poly<T>::monomial(params.l, lift<T>(options.gauge));
  const Poly<T> base = D.apply(fixed);
  const std::size_t rows = static_cast<std::size_t>(degree + n + 1);
  Matrix<T> M(rows, unknowns.size());
  std::vector<T> rhs(rows);
  for (std::size_t j = 0; j < unknowns.size(); ++j) {
    Poly<T> col = D.apply(Poly<T>::monomial(unknowns[j]));
    for (std::size_t r = 0; r < rows; ++r) M(r, j) = col.coeff(r);
  }
  for (std::size_t r = 0; r < rows; ++r) rhs[r] = T(0) - base.coeff(r);
  auto sol = solve_any<T>(M, rhs, options.tol);
  if (!sol) throw Error(ErrorCode::NoKernelElement, "no monic kernel element of this degree");
  Poly<T> p = fixed;
  for (std::size_t j = 0; j < unknowns.size(); ++j) p += Poly<T>::monomial(unknowns[j], (*sol)[j]);
  return p;
}

/// B = (d p + a p(u-2)) / p(u-1). Throws NonzeroRemainder if the division is
/// not exact (for Complex: remainder beyond tol relative).
template <class T>
Poly<T> b_from_roots(const Poly<T>& p, const ModelParams& params, double tol = 1e-9) {
  if (p.is_zero()) throw Error(ErrorCode::InvalidArgument, "p must be nonzero");
  Poly<T> num = lift_poly<T>(params.d()) * p + lift_poly<T>(params.a()) * shift(p, -2);
  auto [q, r] = divmod(num, shift(p, -1));
  if constexpr (is_exact_v<T>) {
    if (!r.is_zero()) throw Error(ErrorCode::NonzeroRemainder, "p(u-1) does not divide d p + a p(u-2)");
  } else {
    if (max_abs_coeff(r) > tol * std::max(1.0, max_abs_coeff(num)))
      throw Error(ErrorCode::NonzeroRemainder, "p(u-1) does not divide d p + a p(u-2)");
    std::vector<T> c = q.coeffs();
    c.resize(params.n + 1, T(0));
    q = Poly<T>(std::move(c));
  }
  return q;
}

}  // namespace xxxlab
