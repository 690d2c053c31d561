#include <random>

#include "doctest.h"
#include "xxxlab/diffop/difference_operator.hpp"
#include "xxxlab/spinchain/checks.hpp"
#include "xxxlab/spinchain/monodromy.hpp"
#include "xxxlab/spinchain/singular.hpp"

using namespace xxxlab;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }

template <class T>
std::vector<T> unit(std::size_t dim, std::size_t i) {
  std::vector<T> v(dim, T(0));
  v[i] = T(1);
  return v;
}

// Coefficients of a vector polynomial along one basis vector.
ExactPoly along(const VecPoly<Rational>& x, std::size_t i) {
  std::vector<Rational> c;
  for (const auto& v : x) c.push_back(v[i]);
  return ExactPoly(c);
}

bool is_multiple(const VecPoly<Rational>& x, const ExactPoly& p, std::size_t i) {
  for (std::size_t k = 0; k < x.size(); ++k)
    for (std::size_t t = 0; t < x[k].size(); ++t)
      if (t != i && sgn(x[k][t]) != 0) return false;
  return along(x, i) == p;
}

}  // namespace

TEST_CASE("monodromy highest-weight action") {
  auto p1 = ModelParams::homogeneous(1, 0);
  Monodromy<Rational> m1(p1);
  auto vp = unit<Rational>(2, 0);
  CHECK(is_multiple(m1.apply(0, 0, vp), ExactPoly({q(1), q(1)}), 0));
  CHECK(is_multiple(m1.apply(1, 1, vp), ExactPoly({q(0), q(1)}), 0));
  auto t21 = m1.apply(1, 0, vp);
  for (const auto& c : t21)
    for (const auto& x : c) CHECK(sgn(x) == 0);

  auto p3 = ModelParams::make(3, 0, {q(1, 2), q(-2), q(5)});
  Monodromy<Rational> m3(p3);
  auto v = unit<Rational>(8, 0);
  CHECK(is_multiple(m3.apply(0, 0, v), p3.a(), 0));
  CHECK(is_multiple(m3.apply(1, 1, v), p3.d(), 0));
}

TEST_CASE("n = 2 transfer matrix") {
  auto p = ModelParams::homogeneous(2, 1);
  Monodromy<Rational> mono(p);
  auto H = hamiltonians_full(mono);
  // B = 2u^2 Id + 2u Id + P12
  CHECK(H[0] == Rational(2) * QMatrix::identity(4));
  CHECK(H[1] == Rational(2) * QMatrix::identity(4));
  QMatrix P12 = dense_from_action<Rational>(4, [](std::span<const Rational> v) { return apply_flip<Rational>(0, 1, v); });
  CHECK(H[2] == P12);
  // on the singlet B acts as 2u^2 + 2u - 1
  auto S = singular_basis_exact(p, 1);
  REQUIRE(S.dim() == 1);
  auto w = S.basis.column(0);
  CHECK(w[0] == -w[1]);
  auto Hw = hamiltonians_on_weight(mono, 1);
  CHECK(Hw[2].apply(w) == std::vector<Rational>{-w[0], -w[1]});
}

TEST_CASE("transfer_B scalars and commutativity") {
  for (int n = 1; n <= 5; ++n) {
    auto p = ModelParams::homogeneous(n, 0);
    Monodromy<Rational> mono(p);
    auto H = hamiltonians_full(mono);
    CHECK(H[0] == Rational(2) * QMatrix::identity(spin_dim(n)));
    CHECK(H[1] == Rational(n) * QMatrix::identity(spin_dim(n)));
    for (int j = 0; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k) CHECK(commutator(H[j], H[k]).is_zero());
  }
  auto pz = ModelParams::make(4, 0, {q(1, 3), q(-2), q(0), q(7, 2)});
  auto H = hamiltonians_full(Monodromy<Rational>(pz));
  auto [o1, o2] = q12_offsets(pz);
  CHECK(H[1] == o1 * QMatrix::identity(16));
  for (int j = 0; j <= 4; ++j)
    for (int k = j + 1; k <= 4; ++k) CHECK(commutator(H[j], H[k]).is_zero());
}

TEST_CASE("H_2 on Sing and the Hamiltonian normalizations") {
  for (int n = 2; n <= 6; ++n)
    for (int l = 0; 2 * l <= n; ++l) {
      auto p = ModelParams::homogeneous(n, l);
      Monodromy<Rational> mono(p);
      auto H = hamiltonians_on_weight(mono, l);
      auto S = singular_basis_exact(p, l);
      Rational h2 = Rational(l * (l - 1 - n)) + make_rational(n * (n - 1), 2);
      for (std::size_t j = 0; j < S.dim(); ++j) {
        auto v = S.basis.column(j);
        auto hv = H[2].apply(v);
        for (std::size_t i = 0; i < v.size(); ++i) CHECK(hv[i] == h2 * v[i]);
      }
    }
}

TEST_CASE("singular subspace dimensions") {
  CHECK(weight_singular_basis(ModelParams::homogeneous(4, 2), 2).dim() == 2);
  CHECK(weight_singular_basis(ModelParams::homogeneous(2, 1), 1).dim() == 1);
  CHECK(weight_singular_basis(ModelParams::homogeneous(10, 5), 5).dim() == 42);
  for (int n = 1; n <= 8; ++n)
    for (int l = 0; 2 * l <= n; ++l) {
      auto p = ModelParams::homogeneous(n, l);
      long long expect = binomial(n, l) - binomial(n, l - 1);
      CHECK(static_cast<long long>(singular_basis_exact(p, l).dim()) == expect);
      auto S = weight_singular_basis(p, l);
      CHECK(static_cast<long long>(S.dim()) == expect);
      if (l > 0) {
        auto e12 = to_complex(e12_weight_matrix(n, l));
        CHECK((e12 * S.basis).max_abs() < 1e-12);
      }
    }
}

TEST_CASE("H_XXX") {
  auto H2 = xxx_hamiltonian<Rational>(2);
  QMatrix P12 = dense_from_action<Rational>(4, [](std::span<const Rational> v) { return apply_flip<Rational>(0, 1, v); });
  CHECK(H2 == Rational(2) * P12);
  for (int n = 2; n <= 5; ++n) {
    auto H = xxx_hamiltonian<Rational>(n);
    CHECK(H == H.transpose());
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) CHECK(commutator(H, gl2_matrix<Rational>(a, b, n)).is_zero());
  }
  auto Hk = hamiltonians_full(Monodromy<Rational>(ModelParams::homogeneous(4, 0)));
  auto Hx = xxx_hamiltonian<Rational>(4);
  for (const auto& h : Hk) CHECK(commutator(Hx, h).is_zero());
}

TEST_CASE("Bethe vectors at n = 4") {
  auto p = ModelParams::homogeneous(4, 2);
  Monodromy<Complex> mono(p);
  CHECK(bethe_vector<Complex>(mono, std::vector<Complex>{}) == unit<Complex>(16, 0));

  auto zero = bethe_vector<Complex>(mono, std::vector<Complex>{-1.0, -2.0});
  CHECK(norm2(zero) < 1e-12);

  const double s = std::sqrt(1.0 / 3.0) / 2.0;
  std::vector<Complex> t{{-1.5, s}, {-1.5, -s}};
  auto w = bethe_vector<Complex>(mono, t);
  CHECK(norm2(w) > 1e-3);
  auto H = hamiltonians_full(mono);
  auto hw = H[4].apply(w);
  for (std::size_t i = 0; i < w.size(); ++i) CHECK(std::abs(hw[i] - w[i]) < 1e-9 * norm2(w));
  auto e12 = apply_gl2<Complex>(0, 1, 4, w);
  CHECK(norm2(e12) < 1e-12 * norm2(w));

  // B(u) eigenvalue equals b_from_roots(f)
  ExactPoly B = b_from_roots(ExactPoly({q(7, 3), q(3), q(1)}), p);
  for (int k = 0; k <= 4; ++k) {
    auto v = H[k].apply(w);
    Complex hk = to_double(B.coeff(4 - k));
    for (std::size_t i = 0; i < w.size(); ++i) CHECK(std::abs(v[i] - hk * w[i]) < 1e-9 * norm2(w));
  }
}

TEST_CASE("quantum determinant") {
  for (int n = 1; n <= 5; ++n) CHECK(qdet_deviation<Rational>(ModelParams::homogeneous(n, 0)) == 0.0);
  CHECK(qdet_deviation<Rational>(ModelParams::make(3, 0, {q(1, 2), q(-3), q(2)})) == 0.0);
  CHECK(qdet_deviation<Complex>(ModelParams::homogeneous(6, 0)) < 1e-9);
}

TEST_CASE("normality") {
  auto r2 = normality_check(ModelParams::homogeneous(2, 0), std::vector<Complex>{1.0});
  CHECK(r2.deviation < 1e-12);
  auto r4 = normality_check(ModelParams::homogeneous(4, 0), std::vector<Complex>{1.0, {2.0, 1.0}, -3.0});
  CHECK(r4.deviation < 1e-12);
  CHECK(r4.hk_commutator < 1e-10);
}

TEST_CASE("RTT relations") {
  auto r1 = rtt_check(ModelParams::homogeneous(1, 0), 2.0, 3.0);
  CHECK(r1.rtt < 1e-13);
  CHECK(r1.exchange < 1e-13);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 2.0);
  for (int trial = 0; trial < 3; ++trial) {
    auto p = ModelParams::make(3, 0, {q(1, 2), q(-1), q(2, 3)});
    Complex u(g(rng), g(rng)), v(g(rng), g(rng));
    auto r = rtt_check(p, u, v);
    CHECK(r.rtt < 1e-11);
    CHECK(r.exchange < 1e-11);
  }
  CHECK_THROWS_AS(rtt_check(ModelParams::homogeneous(2, 0), 1.0, 1.0), Error);
}
