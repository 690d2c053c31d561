#pragma once

// Separated variables: level-l vectors are y0^l times a symmetric polynomial
// in y_1..y_{n-1} of degree <= l in each variable, stored in the
// monomial-symmetric basis m_lambda, lambda in the (n-1) x l box.

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "xxxlab/diffop/model.hpp"
#include "xxxlab/exactmath/linalg.hpp"
#include "xxxlab/exactmath/numeric.hpp"
#include "xxxlab/exactmath/quotient_ring.hpp"
#include "xxxlab/qsystem/pairs.hpp"

namespace xxxlab {

/// Weakly decreasing, padded with zeros to n-1 entries, each <= l.
using BoxPartition = std::vector<int>;

/// All partitions in the rows x l box, ordered by size, then
/// lexicographically.
std::vector<BoxPartition> box_partitions(int rows, int l);

struct SoVBasis {
  int n = 0;
  int l = 0;
  std::vector<BoxPartition> parts;
  std::map<BoxPartition, std::size_t> index;
  std::size_t dim() const { return parts.size(); }
};
/// Throws InvalidArgument unless n >= 2 and l >= 0; the dimension is
/// checked against C(n-1+l, l).
SoVBasis sov_basis(int n, int l);

/// m_lambda at a point y (n-1 coordinates).
Rational monomial_symmetric(const BoxPartition& lambda, std::span<const Rational> y);

/// A polynomial in x_1..x_n, keyed by exponent vectors.
using XPoly = std::map<std::vector<int>, Rational>;

/// x_i = (-1)^(i-1) y0 sigma_(i-1)(y); p must be homogeneous of degree l.
std::vector<Rational> xy_transform(const XPoly& p, const SoVBasis& basis);
XPoly yx_transform(std::span<const Rational> v, const SoVBasis& basis);

template <class T>
struct SoVOperatorPoly {
  std::vector<Matrix<T>> coeffs;  // coefficient of u^k
  long degree() const { return static_cast<long>(coeffs.size()) - 1; }
};

struct SklyaninOps {
  SoVBasis basis;
  SoVOperatorPoly<Rational> T11, T22;
  QMatrix e11, e22;
  std::size_t held_out = 0;   // samples used only to check the interpolation
  bool poles_cancel = false;  // every held-out residual is exactly zero
  int resamples = 0;
};

/// T~_11(u) and T~_22(u) on level l by exact evaluation and interpolation.
/// Throws InterpolationDegeneracy when no sample grid works.
SklyaninOps sklyanin_ops(const ModelParams& params, int l, std::size_t held_out = 3);

struct SoVTransfer {
  SoVOperatorPoly<Rational> B;  // T~_11 + T~_22
  std::vector<QMatrix> H;       // B(u) = sum_k H_k u^(n-k)
};
SoVTransfer transfer_B_sov(const SklyaninOps& ops, int n);

/// e21 e12 on level l, from the u^(2n-2) coefficient of
/// T~_11(u) T~_22(u-1) - a(u) d(u-1). Throws PreconditionViolated if the
/// higher coefficients do not vanish.
QMatrix e21e12_op(const SklyaninOps& ops, const ModelParams& params);

/// omega = y0^l prod_j p(y_j - 1) in SoV coordinates; a = (a_1..a_l).
template <class T>
std::vector<T> weight_fn(std::span<const T> a, const SoVBasis& basis) {
  const int l = basis.l;
  if (static_cast<int>(a.size()) != l) throw Error(ErrorCode::InvalidArgument, "weight_fn needs l coefficients");
  // q(y) = p(y - 1) = sum_k c_k y^k
  Poly<T> p;
  {
    std::vector<T> c(static_cast<std::size_t>(l + 1), T(0));
    c[static_cast<std::size_t>(l)] = T(1);
    for (int i = 0; i < l; ++i) c[static_cast<std::size_t>(l - 1 - i)] = a[static_cast<std::size_t>(i)];
    p = Poly<T>(std::move(c));
  }
  const Poly<T> q = shift(p, -1);
  std::vector<T> out;
  out.reserve(basis.dim());
  for (const auto& lam : basis.parts) {
    T c(1);
    for (int e : lam) c *= q.coeff(e);
    out.push_back(c);
  }
  return out;
}

/// Everything the checks need on one level, built once.
struct SoVModel {
  SklyaninOps ops;
  SoVTransfer transfer;
  QMatrix e21e12;
};
SoVModel sov_model(const ModelParams& params, int l);

struct EigencheckResult {
  std::vector<double> h_residuals;  // ||(H~_s - h_s) omega||, s = 1..n
  double singular_residual = 0.0;  // ||e21 e12 omega||
  bool exact = false;              // computed in exact arithmetic
  bool all_zero = false;           // exact: literal zero; numeric: below tol
  bool omega_nonzero = false;
};

/// Checks H~_s omega = h_s omega and e21 e12 omega = 0 at the pair's point.
EigencheckResult weight_fn_eigencheck(const WronskiPair& pair, const ModelParams& params, const SoVModel& model,
                                      double tol = 1e-9);

/// The same identities over Q[x]/(chi) for symbolic h (see
/// exact_spectral_algebra), covering every point at once.
EigencheckResult weight_fn_eigencheck(const std::vector<AlgebraElement>& h, const ModelParams& params,
                                      const SoVModel& model);

struct ShMap {
  int l = 0;
  QMatrix sh;  // C(n,l) x dim W[l], weight coordinates of the tensor side
  std::size_t samples = 0;
  std::size_t surplus = 0;
  bool consistent = false;  // surplus samples reproduced exactly
  int resamples = 0;
};
/// Identifies T~_12(w_1)...T~_12(w_l) 1 on both sides. Throws
/// RankDeficientSampling after failed resampling.
ShMap sh_map(const ModelParams& params, const SoVBasis& basis, std::size_t surplus = 10);

/// sh H~_k == H_k sh for every k, exactly; per-k results.
std::vector<bool> operator_transport(const ShMap& sh, const SoVTransfer& sov, const ModelParams& params);

/// Exact basis of Sing W_y[l] = ker e21 e12 (columns in SoV coordinates).
QMatrix sov_singular_basis(const QMatrix& e21e12);

struct ExtractedLine {
  CVector line;                  // unit vector in tensor weight coordinates
  std::size_t generalized_dim = 0;  // of the joint generalized eigenspace in Sing W_y[l]
  std::size_t image_rank = 0;
  double residual = 0.0;         // max_k ||H_k v - h_k v|| / max(1, ||H_k||)
};
/// Generalized joint eigenspace of H~ at h_star inside Sing W_y[l], pushed
/// through sh. Throws EmptyImage when the image is zero.
ExtractedLine extract_eigenvector(const std::vector<Complex>& h_star, const ModelParams& params, const SoVModel& model,
                                  const ShMap& sh);

}  // namespace xxxlab
