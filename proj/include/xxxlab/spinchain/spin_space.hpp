#pragma once

// The spin space (C^2)^{⊗n}. Basis vectors are bitstrings: bit k holds the
// state of site k+1, 0 for v+ and 1 for v-. The weight (n-l, l) subspace is
// spanned by bitstrings with l ones.

#include <cstdint>
#include <span>
#include <vector>

#include "xxxlab/exactmath/matrix.hpp"

namespace xxxlab {

inline std::size_t spin_dim(int n) { return std::size_t{1} << n; }

/// Bitstrings with l ones, ascending.
std::vector<std::uint32_t> weight_indices(int n, int l);

/// Position of each bitstring in weight_indices(n, popcount), or npos.
std::vector<std::size_t> weight_positions(int n, int l);

/// sum_k e_ab acting on site k, where e_ab v_b = v_a and a, b in {0, 1}
/// (0 = first basis vector v+, 1 = v-).
template <class T>
std::vector<T> apply_gl2(int a, int b, int n, std::span<const T> v) {
  std::vector<T> out(v.size(), T(0));
  for (std::size_t s = 0; s < v.size(); ++s) {
    if (is_zero(v[s])) continue;
    for (int k = 0; k < n; ++k) {
      if (static_cast<int>((s >> k) & 1u) != b) continue;
      std::size_t t = (s & ~(std::size_t{1} << k)) | (static_cast<std::size_t>(a) << k);
      out[t] += v[s];
    }
  }
  return out;
}

/// Flip P_{ij} (0-based sites) applied to v.
template <class T>
std::vector<T> apply_flip(int i, int j, std::span<const T> v) {
  std::vector<T> out(v.size(), T(0));
  for (std::size_t s = 0; s < v.size(); ++s) {
    std::size_t bi = (s >> i) & 1u, bj = (s >> j) & 1u;
    std::size_t t = s;
    if (bi != bj) t ^= (std::size_t{1} << i) | (std::size_t{1} << j);
    out[t] += v[s];
  }
  return out;
}

/// H_XXX = sum_{j=1}^{n-1} P_{j,j+1} + P_{1,n} applied to v.
template <class T>
std::vector<T> apply_xxx(int n, std::span<const T> v) {
  std::vector<T> out(v.size(), T(0));
  auto add = [&](int i, int j) {
    auto w = apply_flip<T>(i, j, v);
    for (std::size_t s = 0; s < v.size(); ++s) out[s] += w[s];
  };
  for (int j = 0; j + 1 < n; ++j) add(j, j + 1);
  add(0, n - 1);
  return out;
}

/// Dense matrix of a linear map given by its action on basis vectors.
template <class T, class F>
Matrix<T> dense_from_action(std::size_t dim, F&& act) {
  Matrix<T> m(dim, dim);
  std::vector<T> e(dim, T(0));
  for (std::size_t j = 0; j < dim; ++j) {
    e[j] = T(1);
    auto col = act(std::span<const T>(e));
    for (std::size_t i = 0; i < dim; ++i) m(i, j) = col[i];
    e[j] = T(0);
  }
  return m;
}

/// Full 2^n x 2^n H_XXX.
template <class T>
Matrix<T> xxx_hamiltonian(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "H_XXX needs n >= 2");
  return dense_from_action<T>(spin_dim(n), [n](std::span<const T> v) { return apply_xxx<T>(n, v); });
}

/// Full 2^n x 2^n matrix of sum_k e_ab^(k).
template <class T>
Matrix<T> gl2_matrix(int a, int b, int n) {
  return dense_from_action<T>(spin_dim(n), [=](std::span<const T> v) { return apply_gl2<T>(a, b, n, v); });
}

}  // namespace xxxlab
