#pragma once

// Dense univariate polynomials over a scalar ring.
//
// Coefficients are stored in ascending degree order: coeffs()[k] is the
// coefficient of u^k. For exact scalar types the representation is always
// trimmed (leading coefficient nonzero, zero polynomial = empty sequence).
// Complex polynomials keep whatever coefficients they were built with until
// normalize() is called.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "xxxlab/exactmath/errors.hpp"
#include "xxxlab/exactmath/scalar.hpp"

namespace xxxlab {

/// Trimming threshold used by Poly<Complex>::normalize() when no explicit
/// epsilon is given.
double float_poly_epsilon();
void set_float_poly_epsilon(double eps);

template <class T>
class Poly {
 public:
  using scalar_type = T;

  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { canonicalize(); }
  Poly(std::initializer_list<T> coeffs) : c_(coeffs) { canonicalize(); }

  static Poly constant(const T& c) { return Poly(std::vector<T>{c}); }
  static Poly monomial(std::size_t k, const T& c = T(1)) {
    std::vector<T> v(k + 1, T(0));
    v[k] = c;
    return Poly(std::move(v));
  }
  /// The polynomial u - r.
  static Poly linear_root(const T& r) { return Poly(std::vector<T>{T(0) - r, T(1)}); }

  const std::vector<T>& coeffs() const { return c_; }
  std::size_t size() const { return c_.size(); }
  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const T& x) { return xxxlab::is_zero(x); });
  }
  /// Degree; -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  /// Coefficient of u^k (zero outside the stored range).
  T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }
  const T& leading() const { return c_.back(); }

  bool is_monic() const { return !c_.empty() && c_.back() == T(1); }

  T evaluate(const T& x) const {
    T acc = T(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  /// Drops trailing coefficients with magnitude below eps.
  Poly& normalize(double eps) {
    while (!c_.empty() && magnitude(c_.back()) < eps) c_.pop_back();
    return *this;
  }
  Poly& normalize() { return normalize(float_poly_epsilon()); }

  Poly operator-() const {
    std::vector<T> v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = T(0) - c_[i];
    return Poly(std::move(v));
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<T> v(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    return Poly(std::move(v));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<T> v(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] -= b.c_[i];
    return Poly(std::move(v));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.c_.empty() || b.c_.empty()) return Poly();
    std::vector<T> v(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (xxxlab::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(v));
  }
  friend Poly operator*(const T& s, const Poly& p) {
    std::vector<T> v(p.c_.size());
    for (std::size_t i = 0; i < p.c_.size(); ++i) v[i] = s * p.c_[i];
    return Poly(std::move(v));
  }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) {
    std::size_t n = std::max(a.c_.size(), b.c_.size());
    for (std::size_t i = 0; i < n; ++i)
      if (!(a.coeff(i) == b.coeff(i))) return false;
    return true;
  }

  /// Coefficient-wise map into another scalar ring.
  template <class U, class F>
  Poly<U> map(F&& f) const {
    std::vector<U> v;
    v.reserve(c_.size());
    for (const T& x : c_) v.push_back(f(x));
    return Poly<U>(std::move(v));
  }

 private:
  void canonicalize() {
    if constexpr (is_exact_v<T>) {
      while (!c_.empty() && xxxlab::is_zero(c_.back())) c_.pop_back();
    }
  }

  std::vector<T> c_;
};

using ExactPoly = Poly<Rational>;
using FloatPoly = Poly<Complex>;

/// p(u + k). Degree is preserved.
template <class T>
Poly<T> shift(const Poly<T>& p, long k) {
  const auto& c = p.coeffs();
  if (c.empty()) return p;
  Poly<T> lin(std::vector<T>{lift<T>(Rational(k)), T(1)});
  std::vector<T> acc{c.back()};
  Poly<T> r(acc);
  for (std::size_t i = c.size() - 1; i-- > 0;) r = r * lin + Poly<T>::constant(c[i]);
  return r;
}

/// Discrete Wronskian f(u) g(u-1) - f(u-1) g(u).
template <class T>
Poly<T> wronskian(const Poly<T>& f, const Poly<T>& g) {
  return f * shift(g, -1) - shift(f, -1) * g;
}

/// Polynomial long division over a field: returns (quotient, remainder).
template <class T>
std::pair<Poly<T>, Poly<T>> divmod(const Poly<T>& num, const Poly<T>& den) {
  if (den.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by the zero polynomial");
  std::vector<T> r = num.coeffs();
  const auto& d = den.coeffs();
  long dd = den.degree();
  if (static_cast<long>(r.size()) - 1 < dd) return {Poly<T>(), num};
  std::vector<T> q(r.size() - d.size() + 1, T(0));
  const T lead = d.back();
  for (std::size_t k = q.size(); k-- > 0;) {
    T factor = r[k + d.size() - 1] / lead;
    q[k] = factor;
    if (is_zero(factor)) continue;
    for (std::size_t j = 0; j < d.size(); ++j) r[k + j] -= factor * d[j];
  }
  r.resize(d.size() - 1);
  return {Poly<T>(std::move(q)), Poly<T>(std::move(r))};
}

/// Exact quotient num / den. Throws NonzeroRemainder when den does not
/// divide num.
template <class T>
Poly<T> divide_exact(const Poly<T>& num, const Poly<T>& den) {
  auto [q, r] = divmod(num, den);
  if (!r.is_zero()) throw Error(ErrorCode::NonzeroRemainder, "polynomial division leaves a remainder");
  return q;
}

template <class T>
Poly<T> derivative(const Poly<T>& p) {
  const auto& c = p.coeffs();
  if (c.size() <= 1) return Poly<T>();
  std::vector<T> v(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) v[k - 1] = lift<T>(Rational(static_cast<long>(k))) * c[k];
  return Poly<T>(std::move(v));
}

/// Monic gcd over a field.
template <class T>
Poly<T> gcd(Poly<T> a, Poly<T> b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  T lead = a.leading();
  return (T(1) / lead) * a;
}

/// Yun's square-free decomposition of a monic p: factors[i] is the monic
/// product of the roots of multiplicity i + 1 (1 when there are none).
template <class T>
std::vector<Poly<T>> squarefree_decomposition(const Poly<T>& p) {
  std::vector<Poly<T>> out;
  if (p.degree() <= 0) return out;
  Poly<T> a = gcd(p, derivative(p));
  Poly<T> b = divide_exact(p, a);
  Poly<T> c = divide_exact(derivative(p), a);
  Poly<T> d = c - derivative(b);
  while (b.degree() > 0) {
    Poly<T> f = gcd(b, d);
    out.push_back(f);
    b = divide_exact(b, f);
    c = divide_exact(d, f);
    d = c - derivative(b);
  }
  return out;
}

/// Product of (u - r) over the given roots.
template <class T>
Poly<T> from_roots(std::span<const T> roots) {
  Poly<T> p = Poly<T>::constant(T(1));
  for (const T& r : roots) p = p * Poly<T>::linear_root(r);
  return p;
}

FloatPoly to_float(const ExactPoly& p);

/// Coefficient-wise image of a rational polynomial in another scalar ring.
template <class T>
Poly<T> lift_poly(const ExactPoly& p) {
  return p.template map<T>([](const Rational& q) { return lift<T>(q); });
}

/// Maximum coefficient magnitude (0 for the zero polynomial).
template <class T>
double max_abs_coeff(const Poly<T>& p) {
  double m = 0.0;
  for (const T& c : p.coeffs()) m = std::max(m, magnitude(c));
  return m;
}

}  // namespace xxxlab
