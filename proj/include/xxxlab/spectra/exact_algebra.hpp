#pragma once

// The Bethe algebra on Sing in weight l as Q[x]/(chi): X = sum c_k H_k is a
// generator with squarefree characteristic polynomial chi, and every H_k is
// a polynomial P_k(X). The classes h_k = P_k(x) describe all joint
// eigenvalue tuples at once, including irrational ones.

#include <memory>
#include <vector>

#include "xxxlab/diffop/model.hpp"
#include "xxxlab/exactmath/linalg.hpp"
#include "xxxlab/exactmath/quotient_ring.hpp"

namespace xxxlab {

struct ExactSpectralAlgebra {
  int n = 0;
  int l = 0;
  std::vector<Rational> combination;   // c_0..c_n (c_0 = c_1 = 0)
  std::shared_ptr<const ExactPoly> chi;  // monic, squarefree, degree dim Sing
  std::vector<ExactPoly> P;            // H_k = P_k(X), k = 0..n
  std::vector<AlgebraElement> h;       // h_1..h_n
  std::vector<QMatrix> H;              // H_0..H_n in exact Sing coordinates
  QMatrix basis;                       // exact Sing basis, weight coordinates
  std::vector<Complex> roots;          // roots of chi

  /// The tuple h_1..h_n at the r-th root of chi.
  std::vector<Complex> tuple_at(std::size_t r) const;
  /// Index of the root whose tuple is nearest to h (max-norm), and the distance.
  std::pair<std::size_t, double> nearest_root(const std::vector<Complex>& h) const;
};

/// Throws ClusteringAmbiguous when no tried combination has a squarefree
/// characteristic polynomial (the spectrum is not simple), NotCommuting if
/// the family does not commute.
ExactSpectralAlgebra exact_spectral_algebra(const ModelParams& params, int attempts = 8);

}  // namespace xxxlab
