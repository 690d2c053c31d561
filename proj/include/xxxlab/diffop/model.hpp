#pragma once

// Model data: number of sites, level, evaluation points and site weights.

#include <vector>

#include "xxxlab/exactmath/poly.hpp"
#include "xxxlab/exactmath/rational.hpp"

namespace xxxlab {

struct ModelParams {
  int n = 0;
  int l = 0;
  std::vector<Rational> z;  // evaluation points
  std::vector<Rational> m;  // site weights

  /// Validates sizes and positivity of the weights; m defaults to all 1.
  static ModelParams make(int n, int l, std::vector<Rational> z, std::vector<Rational> m = {});
  static ModelParams homogeneous(int n, int l);

  Rational sum_m() const;
  /// sum(m) + 1 - l
  Rational l_tilde() const;
  /// l_tilde as an integer; throws OutOfDomain for fractional weights.
  long l_tilde_int() const;

  /// prod (u - z_i + m_i)
  ExactPoly a() const;
  /// prod (u - z_i)
  ExactPoly d() const;

  /// sum(m) - 2l + 1 + s != 0 for s = 1..l
  bool separating() const;
  bool unit_weights() const;
  bool is_homogeneous() const;
  /// Unit weights and 2l <= n; throws PreconditionViolated otherwise.
  void require_spin_chain() const;

  /// prod_s prod_{j=1..m_s} (u - z_s + j); needs integer weights.
  ExactPoly wronskian_base() const;
  /// (l - l_tilde) * wronskian_base()
  ExactPoly wronskian_target() const;

  /// Same data at a different level.
  ModelParams at_level(int level) const;
};

}  // namespace xxxlab
