#include "xxxlab/diffop/model.hpp"

#include "xxxlab/exactmath/errors.hpp"

namespace xxxlab {

ModelParams ModelParams::make(int n, int l, std::vector<Rational> z, std::vector<Rational> m) {
  if (n <= 0) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  if (l < 0) throw Error(ErrorCode::InvalidArgument, "l must be non-negative");
  if (z.empty()) z.assign(n, Rational(0));
  if (m.empty()) m.assign(n, Rational(1));
  if (static_cast<int>(z.size()) != n || static_cast<int>(m.size()) != n)
    throw Error(ErrorCode::InvalidArgument, "z and m must have n entries");
  for (const auto& w : m)
    if (sgn(w) <= 0) throw Error(ErrorCode::InvalidArgument, "site weights must be positive");
  ModelParams p;
  p.n = n;
  p.l = l;
  p.z = std::move(z);
  p.m = std::move(m);
  return p;
}

ModelParams ModelParams::homogeneous(int n, int l) { return make(n, l, {}, {}); }

Rational ModelParams::sum_m() const {
  Rational s = 0;
  for (const auto& w : m) s += w;
  return s;
}

Rational ModelParams::l_tilde() const { return sum_m() + 1 - l; }

long ModelParams::l_tilde_int() const {
  Rational lt = l_tilde();
  if (lt.get_den() != 1) throw Error(ErrorCode::OutOfDomain, "l_tilde is not an integer");
  return lt.get_num().get_si();
}

ExactPoly ModelParams::a() const {
  ExactPoly p = ExactPoly::constant(1);
  for (int i = 0; i < n; ++i) p *= ExactPoly::linear_root(z[i] - m[i]);
  return p;
}

ExactPoly ModelParams::d() const {
  ExactPoly p = ExactPoly::constant(1);
  for (int i = 0; i < n; ++i) p *= ExactPoly::linear_root(z[i]);
  return p;
}

bool ModelParams::separating() const {
  Rational base = sum_m() - 2 * l + 1;
  for (int s = 1; s <= l; ++s)
    if (sgn(base + s) == 0) return false;
  return true;
}

bool ModelParams::unit_weights() const {
  for (const auto& w : m)
    if (w != 1) return false;
  return true;
}

bool ModelParams::is_homogeneous() const {
  for (const auto& x : z)
    if (sgn(x) != 0) return false;
  return unit_weights();
}

void ModelParams::require_spin_chain() const {
  if (!unit_weights()) throw Error(ErrorCode::PreconditionViolated, "spin-chain code needs all site weights equal to 1");
  if (2 * l > n) throw Error(ErrorCode::PreconditionViolated, "spin-chain code needs 2l <= n");
}

ExactPoly ModelParams::wronskian_base() const {
  ExactPoly p = ExactPoly::constant(1);
  for (int s = 0; s < n; ++s) {
    if (m[s].get_den() != 1) throw Error(ErrorCode::OutOfDomain, "Wronskian target needs integer weights");
    long ms = m[s].get_num().get_si();
    for (long j = 1; j <= ms; ++j) p *= ExactPoly::linear_root(z[s] - j);
  }
  return p;
}

ExactPoly ModelParams::wronskian_target() const { return (Rational(l) - l_tilde()) * wronskian_base(); }

ModelParams ModelParams::at_level(int level) const {
  ModelParams p = *this;
  p.l = level;
  return p;
}

}  // namespace xxxlab
