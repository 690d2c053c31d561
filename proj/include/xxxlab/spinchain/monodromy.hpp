#pragma once

// Monodromy matrix of the spin chain, cleared of denominators:
//   T~_ab(u) = sum over c_1..c_{n-1} of S^(n)_{a c_{n-1}}(u) ... S^(1)_{c_1 b}(u),
//   S^(k)_{ac}(u) = (u - z_k) delta_ac + e_ca acting on site k.
// Indices are 0-based: 0 is the first basis vector v+, 1 is v-. The operators
// are never stored as 2^n x 2^n matrices unless asked for: everything is
// applied to vectors, or to vectors whose entries are polynomials in u.

#include <span>
#include <vector>

#include "xxxlab/diffop/model.hpp"
#include "xxxlab/exactmath/matrix.hpp"
#include "xxxlab/spinchain/spin_space.hpp"

namespace xxxlab {

/// Vector-valued polynomial in u: coeffs[k] is the vector coefficient of u^k.
template <class T>
using VecPoly = std::vector<std::vector<T>>;

/// Polynomial in u with operator coefficients.
template <class T>
struct OperatorPoly {
  std::vector<Matrix<T>> coeffs;
  long degree() const { return static_cast<long>(coeffs.size()) - 1; }
  Matrix<T> evaluate(const T& u) const {
    Matrix<T> acc(coeffs.at(0).rows(), coeffs.at(0).cols());
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = u * acc + coeffs[k];
    return acc;
  }
};

template <class T>
class Monodromy {
 public:
  explicit Monodromy(const ModelParams& params) : n_(params.n) {
    if (!params.unit_weights()) throw Error(ErrorCode::PreconditionViolated, "tensor model needs unit site weights");
    for (const auto& x : params.z) z_.push_back(lift<T>(x));
  }

  int sites() const { return n_; }
  std::size_t dim() const { return spin_dim(n_); }

  /// T~_ab(u + s) applied to v(u).
  VecPoly<T> apply(int a, int b, const VecPoly<T>& v, long s = 0) const {
    const std::size_t N = dim();
    VecPoly<T> x[2];
    x[b] = v;
    x[1 - b] = VecPoly<T>(v.size(), std::vector<T>(N, T(0)));
    const T shift_s = lift<T>(Rational(s));
    for (int k = 0; k < n_; ++k) {
      const T c0 = shift_s - z_[k];
      VecPoly<T> nx[2];
      const std::size_t deg = x[0].size();
      for (int ap = 0; ap < 2; ++ap) {
        nx[ap].assign(deg + 1, std::vector<T>(N, T(0)));
        for (std::size_t j = 0; j < deg; ++j) {
          const auto& src = x[ap][j];
          auto& lo = nx[ap][j];
          auto& hi = nx[ap][j + 1];
          for (std::size_t t = 0; t < N; ++t) {
            if (is_zero(src[t])) continue;
            hi[t] += src[t];
            lo[t] += c0 * src[t];
          }
          // e_{c ap} on site k applied to x[c]
          for (int c = 0; c < 2; ++c) {
            const auto& w = x[c][j];
            for (std::size_t t = 0; t < N; ++t) {
              if (static_cast<int>((t >> k) & 1u) != ap || is_zero(w[t])) continue;
              std::size_t to = (t & ~(std::size_t{1} << k)) | (static_cast<std::size_t>(c) << k);
              lo[to] += w[t];
            }
          }
        }
      }
      x[0] = std::move(nx[0]);
      x[1] = std::move(nx[1]);
    }
    return trim(std::move(x[a]));
  }

  VecPoly<T> apply(int a, int b, std::span<const T> v, long s = 0) const {
    return apply(a, b, VecPoly<T>{std::vector<T>(v.begin(), v.end())}, s);
  }

  /// T~_ab(u) v at a point u.
  std::vector<T> apply_at(int a, int b, const T& u, std::span<const T> v) const {
    const std::size_t N = dim();
    std::vector<T> x[2];
    x[b].assign(v.begin(), v.end());
    x[1 - b].assign(N, T(0));
    for (int k = 0; k < n_; ++k) {
      const T c0 = u - z_[k];
      std::vector<T> nx[2];
      for (int ap = 0; ap < 2; ++ap) {
        nx[ap].assign(N, T(0));
        for (std::size_t t = 0; t < N; ++t)
          if (!is_zero(x[ap][t])) nx[ap][t] = c0 * x[ap][t];
        for (int c = 0; c < 2; ++c)
          for (std::size_t t = 0; t < N; ++t) {
            if (static_cast<int>((t >> k) & 1u) != ap || is_zero(x[c][t])) continue;
            std::size_t to = (t & ~(std::size_t{1} << k)) | (static_cast<std::size_t>(c) << k);
            nx[ap][to] += x[c][t];
          }
      }
      x[0] = std::move(nx[0]);
      x[1] = std::move(nx[1]);
    }
    return std::move(x[a]);
  }

  /// B(u) = T~_11(u) + T~_22(u) applied to v.
  VecPoly<T> apply_B(std::span<const T> v) const { return add(apply(0, 0, v), apply(1, 1, v)); }

  std::vector<T> apply_B_at(const T& u, std::span<const T> v) const {
    auto x = apply_at(0, 0, u, v);
    auto y = apply_at(1, 1, u, v);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
    return x;
  }

  /// Dense T~_ab(u) at a point.
  Matrix<T> matrix_at(int a, int b, const T& u) const {
    return dense_from_action<T>(dim(), [&](std::span<const T> v) { return apply_at(a, b, u, v); });
  }
  Matrix<T> B_matrix_at(const T& u) const {
    return dense_from_action<T>(dim(), [&](std::span<const T> v) { return apply_B_at(u, v); });
  }

  /// T~_ab as a dense operator polynomial (2^n x 2^n coefficients).
  OperatorPoly<T> operator_poly(int a, int b) const { return to_operator_poly([&](std::span<const T> v) { return apply(a, b, v); }); }
  OperatorPoly<T> transfer_B() const { return to_operator_poly([&](std::span<const T> v) { return apply_B(v); }); }

  static VecPoly<T> add(VecPoly<T> x, const VecPoly<T>& y) {
    if (y.size() > x.size()) x.resize(y.size(), std::vector<T>(y.empty() ? 0 : y[0].size(), T(0)));
    for (std::size_t j = 0; j < y.size(); ++j)
      for (std::size_t t = 0; t < y[j].size(); ++t) x[j][t] += y[j][t];
    return x;
  }

 private:
  static VecPoly<T> trim(VecPoly<T> x) {
    while (x.size() > 1) {
      bool zero = true;
      for (const auto& e : x.back()) zero = zero && is_zero(e);
      if (!zero) break;
      x.pop_back();
    }
    return x;
  }

  template <class F>
  OperatorPoly<T> to_operator_poly(F&& act) const {
    const std::size_t N = dim();
    OperatorPoly<T> op;
    op.coeffs.assign(n_ + 1, Matrix<T>(N, N));
    std::vector<T> e(N, T(0));
    for (std::size_t j = 0; j < N; ++j) {
      e[j] = T(1);
      VecPoly<T> col = act(std::span<const T>(e));
      for (std::size_t k = 0; k < col.size() && k < op.coeffs.size(); ++k)
        for (std::size_t i = 0; i < N; ++i) op.coeffs[k](i, j) = col[k][i];
      e[j] = T(0);
    }
    return op;
  }

  int n_;
  std::vector<T> z_;
};

/// H_0..H_n with B(u) = sum_k H_k u^(n-k), as dense matrices on the weight
/// (n-l, l) subspace in the basis weight_indices(n, l).
template <class T>
std::vector<Matrix<T>> hamiltonians_on_weight(const Monodromy<T>& mono, int l) {
  const int n = mono.sites();
  auto idx = weight_indices(n, l);
  auto pos = weight_positions(n, l);
  const std::size_t N = idx.size();
  std::vector<Matrix<T>> H(n + 1, Matrix<T>(N, N));
  std::vector<T> e(mono.dim(), T(0));
  for (std::size_t j = 0; j < N; ++j) {
    e[idx[j]] = T(1);
    VecPoly<T> col = mono.apply_B(e);
    e[idx[j]] = T(0);
    for (std::size_t p = 0; p < col.size(); ++p) {
      const int k = n - static_cast<int>(p);
      for (std::size_t t = 0; t < col[p].size(); ++t) {
        if (is_zero(col[p][t])) continue;
        if (pos[t] == static_cast<std::size_t>(-1))
          throw Error(ErrorCode::PreconditionViolated, "transfer matrix left the weight space");
        H[k](pos[t], j) = col[p][t];
      }
    }
  }
  return H;
}

/// H_0..H_n on the whole space (2^n x 2^n).
template <class T>
std::vector<Matrix<T>> hamiltonians_full(const Monodromy<T>& mono) {
  OperatorPoly<T> B = mono.transfer_B();
  const int n = mono.sites();
  std::vector<Matrix<T>> H(n + 1);
  for (int k = 0; k <= n; ++k) H[k] = B.coeffs[n - k];
  return H;
}

/// omega(t) = T~_12(t_1 + 1) ... T~_12(t_l + 1) v+^{⊗n}.
template <class T>
std::vector<T> bethe_vector(const Monodromy<T>& mono, std::span<const T> t) {
  std::vector<T> v(mono.dim(), T(0));
  v[0] = T(1);
  for (const T& tj : t) v = mono.apply_at(0, 1, tj + T(1), v);
  return v;
}

/// Embeds a weight-space vector into the full space.
template <class T>
std::vector<T> embed_weight(int n, int l, std::span<const T> w) {
  auto idx = weight_indices(n, l);
  std::vector<T> v(spin_dim(n), T(0));
  for (std::size_t i = 0; i < idx.size(); ++i) v[idx[i]] = w[i];
  return v;
}

/// Restricts a full vector to weight-space coordinates.
template <class T>
std::vector<T> restrict_weight(int n, int l, std::span<const T> v) {
  auto idx = weight_indices(n, l);
  std::vector<T> w(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) w[i] = v[idx[i]];
  return w;
}

}  // namespace xxxlab
