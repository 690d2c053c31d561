#include <random>

#include "doctest.h"
#include "xxxlab/diffop/bethe_roots.hpp"
#include "xxxlab/diffop/difference_operator.hpp"

using namespace xxxlab;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }
ExactPoly P(std::initializer_list<Rational> c) { return ExactPoly(std::vector<Rational>(c)); }
std::vector<Rational> V(std::initializer_list<Rational> c) { return c; }

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("model data") {
  auto p = ModelParams::homogeneous(4, 2);
  CHECK(p.a() == P({1, 4, 6, 4, 1}));
  CHECK(p.d() == P({0, 0, 0, 0, 1}));
  CHECK(p.l_tilde() == 3);
  CHECK(p.separating());
  CHECK(p.wronskian_target() == -P({1, 4, 6, 4, 1}));
  // sum m - 2l + 1 + s = 0 at s = 1 for n = 2, l = 2
  CHECK_FALSE(ModelParams::homogeneous(2, 2).separating());
  CHECK_THROWS_AS(ModelParams::make(2, 1, {q(0)}), Error);
  CHECK_THROWS_AS(ModelParams::make(1, 0, {q(0)}, {q(-1)}), Error);
}

TEST_CASE("apply") {
  for (int n = 1; n <= 5; ++n) {
    auto p = ModelParams::homogeneous(n, 0);
    DifferenceOperator<Rational> D{p.d(), p.a() + p.d(), p.a()};
    CHECK(D.apply(ExactPoly::constant(1)).is_zero());
  }
  auto p2 = ModelParams::homogeneous(2, 1);
  DifferenceOperator<Rational> D{p2.d(), P({-1, 2, 2}), p2.a()};
  CHECK(D.apply(P({q(3, 2), 1})).is_zero());
  CHECK(D.apply(P({0, 1})) == P({-3}));
}

TEST_CASE("q12") {
  auto p4 = ModelParams::homogeneous(4, 2);
  auto [a1, a2] = q12<Rational>(V({4, 0, 7, 9}), p4);
  CHECK(a1 == 0);
  CHECK(a2 == 0);
  auto [b1, b2] = q12<Rational>(V({2, -1}), ModelParams::homogeneous(2, 1));
  CHECK(b1 == 0);
  CHECK(b2 == 0);
  auto [c1, c2] = q12<Rational>(V({0, 0, 0, 0}), p4);
  CHECK(c1 == -4);
  CHECK(c2 == 0);
  // h2 = 1 moves off the affine subspace in the second coordinate as well
  auto [d1, d2] = q12<Rational>(V({0, 1, 0, 0}), p4);
  CHECK(d1 != 0);
  CHECK(d2 != 0);
}

TEST_CASE("residual_system") {
  auto r1 = residual_system<Rational>(V({q(3, 2)}), V({2, -1}), ModelParams::homogeneous(2, 1));
  CHECK(r1 == V({0}));
  auto p4 = ModelParams::homogeneous(4, 2);
  auto r2 = residual_system<Rational>(V({3, 2}), V({4, 0, -2, -1}), p4);
  CHECK(r2 == V({0, 0, 0, 0}));
  auto r3 = residual_system<Rational>(V({0, 0}), V({4, 0, -2, -1}), p4);
  REQUIRE(r3.size() == 4);
  CHECK_FALSE((r3[0] == 0 && r3[1] == 0 && r3[2] == 0 && r3[3] == 0));
  CHECK(code_of([&] { residual_system<Rational>(V({3, 2}), V({5, 0, -2, -1}), p4); }) ==
        ErrorCode::PreconditionViolated);
}

TEST_CASE("kernel_poly") {
  auto p2 = ModelParams::homogeneous(2, 1);
  CHECK(kernel_poly<Rational>(V({2, -1}), 1, p2) == P({q(3, 2), 1}));
  CHECK(kernel_poly<Rational>(V({2, -1}), 2, p2) == P({q(-5, 2), 0, 1}));

  auto p4 = ModelParams::homogeneous(4, 2);
  CHECK(kernel_poly<Rational>(V({4, 0, -2, 1}), 2, p4) == P({q(7, 3), 3, 1}));
  CHECK(kernel_poly<Rational>(V({4, 0, -2, -1}), 2, p4) == P({2, 3, 1}));
  // normalized companion, and the same line written with u^2 coefficient 6
  CHECK(kernel_poly<Rational>(V({4, 0, -2, -1}), 3, p4) == P({q(-15, 2), -8, 0, 1}));
  KernelOptions gauge6;
  gauge6.gauge = 6;
  CHECK(kernel_poly<Rational>(V({4, 0, -2, -1}), 3, p4, gauge6) == P({q(9, 2), 10, 6, 1}));
  CHECK(kernel_poly<Rational>(V({4, 0, -2, 1}), 3, p4, gauge6) == P({q(13, 2), 11, 6, 1}));

  CHECK(code_of([&] { kernel_poly<Rational>(V({4, 0, 5, 1}), 2, p4); }) == ErrorCode::NoKernelElement);
  CHECK(code_of([&] { kernel_poly<Rational>(V({4, 0, 5, 1}), 3, p4); }) == ErrorCode::NoKernelElement);
  auto ns = ModelParams::homogeneous(2, 2);
  auto [o1, o2] = q12_offsets(ns);
  CHECK(code_of([&] { kernel_poly<Rational>(V({o1, o2}), 2, ns); }) == ErrorCode::NotSeparating);

  // l = 0: f = 1 and B = a + d
  auto p0 = ModelParams::homogeneous(3, 0);
  auto h0 = h_from_b<Rational>(p0.a() + p0.d(), 3);
  CHECK(kernel_poly<Rational>(h0, 0, p0) == P({1}));
}

TEST_CASE("kernel_poly over complex scalars") {
  auto p4 = ModelParams::homogeneous(4, 2);
  std::vector<Complex> h{4.0, 0.0, -2.0, 1.0};
  auto f = kernel_poly<Complex>(h, 2, p4);
  CHECK(std::abs(f.coeff(0) - Complex(7.0 / 3.0)) < 1e-12);
  CHECK(std::abs(f.coeff(1) - Complex(3.0)) < 1e-12);
  auto g = kernel_poly<Complex>(h, 3, p4);
  CHECK(std::abs(g.coeff(0) - Complex(-7.5)) < 1e-10);
  CHECK(std::abs(g.coeff(1) - Complex(-7.0)) < 1e-10);
}

TEST_CASE("b_from_roots") {
  for (int n = 1; n <= 4; ++n) {
    auto p = ModelParams::homogeneous(n, 0);
    CHECK(b_from_roots(ExactPoly::constant(1), p) == p.a() + p.d());
  }
  CHECK(b_from_roots(P({q(3, 2), 1}), ModelParams::homogeneous(2, 1)) == P({-1, 2, 2}));
  auto p4 = ModelParams::homogeneous(4, 2);
  ExactPoly B = b_from_roots(P({q(7, 3), 3, 1}), p4);
  CHECK(B == P({1, -2, 0, 4, 2}));
  // constant term independently: a(0) p(-2) / p(-1)
  ExactPoly f = P({q(7, 3), 3, 1});
  CHECK(B.coeff(0) == p4.a().evaluate(0) * f.evaluate(-2) / f.evaluate(-1));
  CHECK(b_from_roots(P({2, 3, 1}), p4) == P({-1, -2, 0, 4, 2}));
  CHECK(code_of([&] { b_from_roots(P({1, 0, 1}), p4); }) == ErrorCode::NonzeroRemainder);
}

TEST_CASE("bae_residual classification") {
  auto p4 = ModelParams::homogeneous(4, 2);
  const double s = std::sqrt(1.0 / 3.0) / 2.0;
  std::vector<Complex> adm{{-1.5, s}, {-1.5, -s}};
  auto r = bae_residual(adm, p4);
  CHECK(r.classification == RootClass::admissible);
  for (auto x : r.residuals) CHECK(std::abs(x) < 1e-12);

  std::vector<Complex> bad{-1.0, -2.0};
  auto r2 = bae_residual(bad, p4);
  CHECK(r2.classification == RootClass::non_admissible);
  for (auto x : r2.residuals) CHECK(std::abs(x) < 1e-12);

  CHECK(bae_residual(std::vector<Complex>{0.0, 0.0}, p4).classification == RootClass::non_admissible);
  CHECK(bae_residual(std::vector<Complex>{0.3, 2.1}, p4).classification == RootClass::off_shell);

  CHECK(roots_of(P({q(7, 3), 3, 1}), p4).classification == RootClass::admissible);
}

TEST_CASE("degree drop and q1 sensitivity") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
  auto rat = [&] { return make_rational(num(rng), den(rng)); };
  for (int n = 2; n <= 6; ++n)
    for (int l = 0; 2 * l <= n; ++l) {
      std::vector<Rational> z(n);
      for (auto& x : z) x = rat();
      auto p = ModelParams::make(n, l, z);
      auto [o1, o2] = q12_offsets(p);
      std::vector<Rational> h(n), a(l);
      for (auto& x : h) x = rat();
      for (auto& x : a) x = rat();
      h[0] = o1;
      h[1] = o2;
      auto D = make_operator<Rational>(p, h);
      ExactPoly f = monic_from_tail<Rational>(a);
      CHECK(D.apply(f).degree() <= l + n - 3);
      h[0] += 1;
      auto D2 = make_operator<Rational>(p, h);
      // coefficient of u^(l+n-1) is -q1 = -1
      CHECK(D2.apply(f).coeff(l + n - 1) == -1);
    }
}

TEST_CASE("triangular structure of the kernel system") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(-9, 9), den(1, 4);
  auto rat = [&] { return make_rational(num(rng), den(rng)); };
  for (int n = 2; n <= 8; ++n)
    for (int l = 1; l <= 4; ++l) {
      std::vector<Rational> z(n), m(n);
      for (auto& x : z) x = rat();
      for (auto& x : m) x = make_rational(1 + static_cast<long>(rng() % 3), 1 + static_cast<long>(rng() % 2));
      auto p = ModelParams::make(n, l, z, m);
      auto [o1, o2] = q12_offsets(p);
      std::vector<Rational> h(n);
      for (auto& x : h) x = rat();
      h[0] = o1;
      h[1] = o2;
      std::vector<Rational> zero(l, Rational(0));
      auto c0 = residual_system<Rational>(zero, h, p);
      for (int j = 0; j < l; ++j) {
        std::vector<Rational> e(l, Rational(0));
        e[j] = 1;
        auto cj = residual_system<Rational>(e, h, p);
        for (int i = 0; i < l; ++i) {
          Rational entry = cj[i] - c0[i];
          if (i < j) CHECK(entry == 0);
          if (i == j) CHECK(entry == triangular_diagonal(p, i + 1));
        }
      }
    }
}

TEST_CASE("kernel pairs satisfy the Wronskian identity") {
  auto p4 = ModelParams::homogeneous(4, 2);
  for (int s : {1, -1}) {
    std::vector<Rational> h{4, 0, -2, s};
    ExactPoly f = kernel_poly<Rational>(h, 2, p4), g = kernel_poly<Rational>(h, 3, p4);
    CHECK(wronskian(f, g) == p4.wronskian_target());
    CHECK(make_operator<Rational>(p4, h).apply(f).is_zero());
    CHECK(make_operator<Rational>(p4, h).apply(g).is_zero());
  }
}
