#pragma once

// Weight and singular subspaces, in weight-space coordinates.

#include <cstdint>
#include <string>
#include <vector>

#include "xxxlab/diffop/model.hpp"
#include "xxxlab/exactmath/combinatorics.hpp"
#include "xxxlab/exactmath/linalg.hpp"
#include "xxxlab/exactmath/numeric.hpp"

namespace xxxlab {

template <class T>
struct SubspaceBasis {
  int n = 0;
  int l = 0;
  std::string label;                    // "weight" or "singular"
  std::vector<std::uint32_t> weight;    // bitstrings spanning the weight space
  Matrix<T> basis;                      // columns in weight coordinates
  std::size_t ambient_dim() const { return std::size_t{1} << n; }
  std::size_t dim() const { return basis.cols(); }
};

/// e_12 from weight l to weight l-1, in weight coordinates.
QMatrix e12_weight_matrix(int n, int l);
/// e_21 from weight l to weight l+1, in weight coordinates.
QMatrix e21_weight_matrix(int n, int l);

/// Exact spanning basis of Sing in weight l (kernel of e_12).
SubspaceBasis<Rational> singular_basis_exact(const ModelParams& params, int l);

/// Orthonormal basis of Sing in weight l, from the SVD of e_12.
SubspaceBasis<Complex> weight_singular_basis(const ModelParams& params, int l);

}  // namespace xxxlab
