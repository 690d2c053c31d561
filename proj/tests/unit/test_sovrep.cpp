#include "doctest.h"
#include "xxxlab/qsystem/enumerate.hpp"
#include "xxxlab/sovrep/sov.hpp"
#include "xxxlab/exactmath/combinatorics.hpp"
#include "xxxlab/spectra/exact_algebra.hpp"
#include "xxxlab/spectra/spectrum.hpp"
#include "xxxlab/spinchain/monodromy.hpp"

using namespace xxxlab;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }

XPoly nonzero_terms(const XPoly& p) {
  XPoly out;
  for (const auto& [e, c] : p)
    if (c != 0) out[e] = c;
  return out;
}

QMatrix identity(std::size_t d) {
  QMatrix I(d, d);
  for (std::size_t i = 0; i < d; ++i) I(i, i) = 1;
  return I;
}

double overlap(const CVector& a, const CVector& b) {
  Complex s = 0.0;
  double na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += std::conj(a[i]) * b[i];
    na += std::norm(a[i]);
    nb += std::norm(b[i]);
  }
  return std::abs(s) / std::sqrt(na * nb);
}

}  // namespace

TEST_CASE("box partitions and basis dimension") {
  auto parts = box_partitions(2, 2);
  REQUIRE(parts.size() == 6);
  CHECK(parts.front() == BoxPartition{0, 0});
  CHECK(parts.back() == BoxPartition{2, 2});
  CHECK(sov_basis(4, 2).dim() == 10);
  CHECK(sov_basis(6, 3).dim() == 56);
  CHECK(sov_basis(3, 0).dim() == 1);
}

TEST_CASE("x to y change of variables") {
  auto b2 = sov_basis(2, 1);
  CHECK(xy_transform(XPoly{{{1, 0}, 1}}, b2) == std::vector<Rational>{1, 0});
  CHECK(xy_transform(XPoly{{{0, 1}, 1}}, b2) == std::vector<Rational>{0, -1});

  auto b3 = sov_basis(3, 2);
  auto v = xy_transform(XPoly{{{1, 1, 0}, 1}}, b3);
  for (std::size_t i = 0; i < b3.dim(); ++i) CHECK(v[i] == (b3.parts[i] == BoxPartition{1, 0} ? q(-1) : q(0)));
  auto x1sq = xy_transform(XPoly{{{2, 0, 0}, 1}}, b3);
  CHECK(x1sq[b3.index.at({0, 0})] == 1);

  auto b4 = sov_basis(4, 2);
  XPoly p{{{2, 0, 0, 0}, q(3, 2)}, {{0, 1, 1, 0}, -4}, {{0, 0, 0, 2}, q(1, 7)}, {{1, 0, 0, 1}, 5}};
  CHECK(nonzero_terms(yx_transform(xy_transform(p, b4), b4)) == p);
  CHECK_THROWS_AS(xy_transform(XPoly{{{1, 0, 0, 0}, 1}}, b4), Error);
}

TEST_CASE("Sklyanin operators") {
  auto p0 = ModelParams::homogeneous(3, 0);
  auto s0 = sklyanin_ops(p0, 0);
  const auto a = p0.a(), d = p0.d();
  for (std::size_t k = 0; k < s0.T11.coeffs.size(); ++k) CHECK(s0.T11.coeffs[k](0, 0) == a.coeff(k));
  for (std::size_t k = 0; k < s0.T22.coeffs.size(); ++k) CHECK(s0.T22.coeffs[k](0, 0) == d.coeff(k));

  auto p4 = ModelParams::make(4, 2, {0, q(1, 3), q(-2), q(5, 2)});
  auto s = sklyanin_ops(p4, 2);
  CHECK(s.poles_cancel);
  CHECK(s.e22 == Rational(2) * identity(s.basis.dim()));

  auto t = transfer_B_sov(s, 4);
  REQUIRE(t.H.size() == 5);
  CHECK(t.H[0] == Rational(2) * identity(s.basis.dim()));
  Rational h1 = 0;
  for (int i = 0; i < 4; ++i) h1 += p4.m[i] - Rational(2) * p4.z[i];
  CHECK(t.H[1] == h1 * identity(s.basis.dim()));
  for (std::size_t i = 2; i < t.H.size(); ++i)
    for (std::size_t j = i + 1; j < t.H.size(); ++j) CHECK(t.H[i] * t.H[j] == t.H[j] * t.H[i]);
}

TEST_CASE("singular subspace from the quantum determinant") {
  auto m0 = sov_model(ModelParams::homogeneous(3, 0), 0);
  CHECK(m0.e21e12 == QMatrix(1, 1));

  auto m2 = sov_model(ModelParams::homogeneous(2, 1), 1);
  CHECK(rank(m2.e21e12) == 1);
  CHECK(sov_singular_basis(m2.e21e12).cols() == 1);

  for (auto [n, l] : {std::pair{4, 2}, std::pair{5, 2}, std::pair{4, 1}}) {
    auto m = sov_model(ModelParams::homogeneous(n, l), l);
    CHECK(sov_singular_basis(m.e21e12).cols() == binomial(n - 1 + l, l) - binomial(n - 2 + l, l - 1));
  }
}

TEST_CASE("weight function") {
  CHECK(weight_fn<Rational>({}, sov_basis(3, 0)) == std::vector<Rational>{1});

  std::vector<Rational> a1{q(3, 2)};
  CHECK(weight_fn<Rational>(a1, sov_basis(2, 1)) == std::vector<Rational>{q(1, 2), 1});

  auto b4 = sov_basis(4, 2);
  std::vector<Rational> a2{3, 2};
  auto w = weight_fn<Rational>(a2, b4);
  for (std::size_t i = 0; i < b4.dim(); ++i) {
    const auto& lam = b4.parts[i];
    bool full = lam[2] >= 1;
    CHECK(w[i] == (full ? q(1) : q(0)));
  }
  std::vector<Rational> any{q(-7, 3), q(11, 5)};
  auto w2 = weight_fn<Rational>(any, b4);
  CHECK(w2[b4.index.at({2, 2, 2})] == 1);
}

TEST_CASE("weight function is an eigenvector at every pair") {
  for (auto [n, l] : {std::pair{2, 1}, std::pair{4, 2}, std::pair{4, 1}}) {
    auto params = ModelParams::homogeneous(n, l);
    auto model = sov_model(params, l);
    auto r = enumerate_pairs(params, SolveMethod::exact_elimination);
    REQUIRE(r.found() >= 1);
    for (const auto& pair : r.pairs) {
      auto e = weight_fn_eigencheck(pair, params, model);
      CHECK(e.omega_nonzero);
      CHECK(e.all_zero);
      if (pair.exact) CHECK(e.exact);
    }
  }
  // V2 has a vanishing Bethe vector but a nonzero SoV weight function
  auto p4 = ModelParams::homogeneous(4, 2);
  auto model = sov_model(p4, 2);
  auto v2 = pair_from_f(ExactPoly({2, 3, 1}), p4);
  auto e = weight_fn_eigencheck(v2, p4, model);
  CHECK(e.exact);
  CHECK(e.all_zero);
  for (double x : e.h_residuals) CHECK(x == 0.0);
  CHECK(e.singular_residual == 0.0);

  WronskiPair bad = v2;
  bad.f = ExactPoly({q(1, 3), q(-5, 7), 1});
  bad.h[3] += 2;
  auto eb = weight_fn_eigencheck(bad, p4, model);
  CHECK(eb.omega_nonzero);
  CHECK_FALSE(eb.all_zero);
}

TEST_CASE("symbolic eigencheck over the spectral algebra") {
  auto params = ModelParams::homogeneous(5, 2);
  auto model = sov_model(params, 2);
  auto alg = exact_spectral_algebra(params);
  auto e = weight_fn_eigencheck(alg.h, params, model);
  CHECK(e.exact);
  CHECK(e.all_zero);
}

TEST_CASE("projection onto the tensor module") {
  auto p3 = ModelParams::homogeneous(3, 0);
  auto s0 = sh_map(p3, sov_basis(3, 0));
  REQUIRE(s0.sh.rows() == 1);
  CHECK(s0.sh(0, 0) == 1);

  auto p2 = ModelParams::homogeneous(2, 1);
  auto m2 = sov_model(p2, 1);
  auto s2 = sh_map(p2, m2.ops.basis);
  CHECK(s2.consistent);
  QMatrix g2 = sov_singular_basis(m2.e21e12);
  QMatrix img = s2.sh * g2;
  CHECK(img(0, 0) == -img(1, 0));
  CHECK(img(0, 0) != 0);

  auto p4 = ModelParams::make(4, 2, {0, q(1, 3), q(-2), q(5, 2)});
  auto m4 = sov_model(p4, 2);
  auto s4 = sh_map(p4, m4.ops.basis);
  CHECK(s4.consistent);
  CHECK(s4.samples >= m4.ops.basis.dim() + 10);
  QMatrix g4 = sov_singular_basis(m4.e21e12);
  CHECK(g4.cols() == 6);
  CHECK(kernel_basis(s4.sh * g4).size() == 4);
  for (bool ok : operator_transport(s4, m4.transfer, p4)) CHECK(ok);
}

TEST_CASE("eigenvector extraction") {
  auto p4 = ModelParams::homogeneous(4, 2);
  auto model = sov_model(p4, 2);
  auto sh = sh_map(p4, model.ops.basis);
  auto spec = chain_spectrum(p4);

  // V2: compared with independent diagonalization
  std::vector<Complex> v2h{4, 0, -2, -1};
  auto e2 = extract_eigenvector(v2h, p4, model, sh);
  CHECK(e2.image_rank == 1);
  CHECK(e2.residual < 1e-9);
  const EigenTuple* ref = nullptr;
  for (const auto& t : spec.tuples)
    if (std::abs(t.h[3] + 1.0) < 1e-8) ref = &t;
  REQUIRE(ref != nullptr);
  CHECK(overlap(e2.line, ref->line) > 1.0 - 1e-8);

  // V1: compared with the admissible Bethe vector
  auto r = enumerate_pairs(p4, SolveMethod::exact_elimination);
  const WronskiPair* v1 = nullptr;
  for (const auto& p : r.pairs)
    if (p.h[3] == 1) v1 = &p;
  REQUIRE(v1 != nullptr);
  REQUIRE(v1->roots.classification == RootClass::admissible);
  Monodromy<Complex> mono(p4);
  auto bv = bethe_vector<Complex>(mono, v1->roots.t);
  auto bw = restrict_weight<Complex>(4, 2, bv);
  auto e1 = extract_eigenvector({4, 0, -2, 1}, p4, model, sh);
  CHECK(e1.residual < 1e-9);
  CHECK(overlap(e1.line, bw) > 1.0 - 1e-8);

  // n = 2 singlet
  auto p2 = ModelParams::homogeneous(2, 1);
  auto m2 = sov_model(p2, 1);
  auto s2 = sh_map(p2, m2.ops.basis);
  auto e = extract_eigenvector({2, -1}, p2, m2, s2);
  REQUIRE(e.line.size() == 2);
  CHECK(std::abs(e.line[0] + e.line[1]) < 1e-12);
  CHECK(std::abs(std::abs(e.line[0]) - std::sqrt(0.5)) < 1e-12);

  CHECK_THROWS_AS(extract_eigenvector({4, 0, -2, 3}, p4, model, sh), Error);
}

TEST_CASE("extraction at n = 6 on every point") {
  auto p = ModelParams::homogeneous(6, 2);
  auto model = sov_model(p, 2);
  auto sh = sh_map(p, model.ops.basis);
  auto spec = chain_spectrum(p);
  REQUIRE(spec.tuples.size() == 9);
  for (const auto& t : spec.tuples) {
    auto e = extract_eigenvector(t.h, p, model, sh);
    CHECK(e.image_rank == 1);
    CHECK(e.residual < 1e-9);
    CHECK(overlap(e.line, t.line) > 1.0 - 1e-8);
  }
}
