#include "doctest.h"
#include "xxxlab/qsystem/enumerate.hpp"

using namespace xxxlab;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }
ExactPoly P(std::initializer_list<Rational> c) { return ExactPoly(std::vector<Rational>(c)); }

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

TEST_CASE("expected_count") {
  CHECK(expected_count(ModelParams::homogeneous(4, 2)) == 2);
  CHECK(expected_count(ModelParams::homogeneous(2, 1)) == 1);
  CHECK(expected_count(ModelParams::homogeneous(10, 5)) == 42);
  CHECK(code_of([] { expected_count(ModelParams::make(2, 1, {}, {q(2), q(1)})); }) == ErrorCode::OutOfDomain);
}

TEST_CASE("pair_from_f") {
  auto p2 = ModelParams::homogeneous(2, 1);
  auto a = pair_from_f(P({q(3, 2), 1}), p2);
  CHECK(a.g == P({q(-5, 2), 0, 1}));
  CHECK(a.h == std::vector<Rational>{2, -1});
  CHECK(a.certificate.status == CertStatus::exact);

  auto p4 = ModelParams::homogeneous(4, 2);
  auto v1 = pair_from_f(P({q(7, 3), 3, 1}), p4, 6);
  CHECK(v1.g == P({q(13, 2), 11, 6, 1}));
  auto v1n = pair_from_f(P({q(7, 3), 3, 1}), p4);
  CHECK(v1n.g == P({q(-15, 2), -7, 0, 1}));
  CHECK(v1.g - v1n.g == Rational(6) * v1.f);
  CHECK(v1n.h == std::vector<Rational>{4, 0, -2, 1});
  CHECK(v1n.certificate.status == CertStatus::exact);
  // the gauged g is not in stored normal form
  CHECK(v1.certificate.status == CertStatus::failed);
  CHECK_FALSE(v1.certificate.normalized);

  CHECK(code_of([&] { pair_from_f(P({1, 0, 1}), p4); }) == ErrorCode::NoCompanion);
}

TEST_CASE("verify_pair") {
  auto p4 = ModelParams::homogeneous(4, 2);
  auto v2 = pair_from_f(P({2, 3, 1}), p4);
  CHECK(v2.certificate.status == CertStatus::exact);
  CHECK(v2.certificate.wronskian_residual == 0.0);

  WronskiPair bad = v2;
  bad.g += ExactPoly::constant(1);
  auto c = verify_pair(bad, p4);
  CHECK(c.status == CertStatus::failed);
  REQUIRE(c.wronskian_defect.has_value());
  CHECK(c.wronskian_defect->degree() <= 2);
  CHECK(*c.wronskian_defect == wronskian(v2.f, ExactPoly::constant(1)));

  WronskiPair nm = v2;
  nm.f = Rational(2) * v2.f;
  CHECK(verify_pair(nm, p4).status == CertStatus::failed);
  CHECK_FALSE(verify_pair(nm, p4).normalized);
}

TEST_CASE("enumerate n = 2 and n = 4 homogeneous") {
  for (auto m : {SolveMethod::newton_multistart, SolveMethod::exact_elimination}) {
    auto r2 = enumerate_pairs(ModelParams::homogeneous(2, 1), m);
    REQUIRE(r2.found() == 1);
    CHECK(r2.pairs[0].exact);
    CHECK(r2.pairs[0].f == P({q(3, 2), 1}));
    CHECK(r2.pairs[0].g == P({q(-5, 2), 0, 1}));
    CHECK(r2.pairs[0].h == std::vector<Rational>{2, -1});

    auto r4 = enumerate_pairs(ModelParams::homogeneous(4, 2), m);
    REQUIRE(r4.found() == 2);
    CHECK(r4.expected == 2);
    CHECK(r4.pairs[0].h == std::vector<Rational>{4, 0, -2, -1});
    CHECK(r4.pairs[1].h == std::vector<Rational>{4, 0, -2, 1});
    CHECK(r4.pairs[0].f == P({2, 3, 1}));
    CHECK(r4.pairs[1].f == P({q(7, 3), 3, 1}));
    CHECK(r4.min_separation > 1e-6);
  }
}

TEST_CASE("enumerate n = 4, l = 1 and n = 3") {
  auto r = enumerate_pairs(ModelParams::homogeneous(4, 1), SolveMethod::newton_multistart);
  CHECK(r.found() == 3);
  for (const auto& p : r.pairs) CHECK(p.certificate.status != CertStatus::failed);
  auto e = enumerate_pairs(ModelParams::homogeneous(4, 1), SolveMethod::exact_elimination);
  CHECK(e.found() == 3);
  auto r3 = enumerate_pairs(ModelParams::homogeneous(3, 1), SolveMethod::exact_elimination);
  CHECK(r3.found() == 2);
}

TEST_CASE("eigen_seeded needs seeds and polishes them") {
  auto p4 = ModelParams::homogeneous(4, 2);
  CHECK(code_of([&] { enumerate_pairs(p4, SolveMethod::eigen_seeded); }) == ErrorCode::PreconditionViolated);
  SolveOptions o;
  o.seeds = {{4.0, 0.0, -2.0 + 1e-6, 1.0 - 1e-6}, {4.0, 0.0, -2.0, -1.0 + 1e-7}};
  auto r = enumerate_pairs(p4, SolveMethod::eigen_seeded, o);
  CHECK(r.found() == 2);
  for (const auto& p : r.pairs) CHECK(p.certificate.status == CertStatus::exact);
}

TEST_CASE("pair properties") {
  for (int n = 2; n <= 5; ++n)
    for (int l = 0; 2 * l <= n; ++l) {
      auto params = ModelParams::homogeneous(n, l);
      auto r = enumerate_pairs(params, SolveMethod::newton_multistart);
      CHECK(static_cast<long long>(r.found()) == r.expected);
      for (const auto& p : r.pairs) {
        if (p.exact) {
          auto again = pair_from_f(p.f, params);
          CHECK(again.g == p.g);
          CHECK(again.h == p.h);
        }
        if (p.roots.classification == RootClass::admissible) {
          auto res = bae_residual(p.roots.t, params);
          for (auto x : res.residuals) CHECK(std::abs(x) < 1e-6);
        }
      }
    }
}

TEST_CASE("budget exhaustion keeps the partial report") {
  SolveOptions o;
  o.iteration_budget = 1;
  o.threads = 1;
  try {
    enumerate_pairs(ModelParams::homogeneous(6, 3), SolveMethod::newton_multistart, o);
    FAIL("expected BudgetExceeded");
  } catch (const BudgetExceeded& e) {
    CHECK(e.code() == ErrorCode::SolverBudgetExceeded);
    CHECK(e.partial().budget_exceeded);
  }
}

TEST_CASE("wronskian refine recovers a multiple point") {
  auto p = ModelParams::homogeneous(4, 2);
  std::vector<Complex> h0{4, 0, Complex(-2.001, 0.0005), -0.999};
  auto w = wronskian_refine(h0, p);
  REQUIRE(w.has_value());
  CHECK(std::abs((*w)[2] + 2.0) < 1e-10);
  CHECK(std::abs((*w)[3] + 1.0) < 1e-10);
  CHECK_FALSE(wronskian_refine({2, 0, 0}, ModelParams::homogeneous(3, 0)).has_value());
}
