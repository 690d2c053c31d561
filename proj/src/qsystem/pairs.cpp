#include "xxxlab/qsystem/pairs.hpp"

#include <limits>

#include "xxxlab/exactmath/combinatorics.hpp"
#include "xxxlab/exactmath/linalg.hpp"

namespace xxxlab {

const char* to_string(CertStatus s) {
  switch (s) {
    case CertStatus::exact:
      return "exact";
    case CertStatus::numeric:
      return "numeric";
    case CertStatus::failed:
      return "failed";
  }
  return "?";
}

long long expected_count(const ModelParams& params) {
  if (!params.unit_weights()) throw Error(ErrorCode::OutOfDomain, "expected_count needs all weights equal to 1");
  if (2 * params.l > params.n) throw Error(ErrorCode::PreconditionViolated, "expected_count needs 2l <= n");
  return binomial(params.n, params.l) - binomial(params.n, params.l - 1);
}

namespace {

template <class T>
bool normalized_pair(const Poly<T>& f, const Poly<T>& g, const ModelParams& params, double tol) {
  const long lt = params.l_tilde_int();
  auto near_one = [&](const T& x) { return negligible(T(x - T(1)), 1.0, tol); };
  if (f.degree() != params.l || !near_one(f.leading())) return false;
  if (g.degree() != lt || !near_one(g.leading())) return false;
  if (lt > params.l && !negligible(g.coeff(params.l), 1.0, tol)) return false;
  return true;
}

}  // namespace

PairCertificate verify_pair(const WronskiPair& pair, const ModelParams& params, const VerifyOptions& options) {
  PairCertificate c;
  if (pair.exact) {
    ExactPoly defect = wronskian(pair.f, pair.g) - params.wronskian_target();
    c.wronskian_residual = max_abs_coeff(defect);
    c.wronskian_defect = defect;
    bool zero = defect.is_zero();
    try {
      auto D = make_operator<Rational>(params, pair.h);
      ExactPoly rf = D.apply(pair.f), rg = D.apply(pair.g);
      c.f_residual = max_abs_coeff(rf);
      c.g_residual = max_abs_coeff(rg);
      zero = zero && rf.is_zero() && rg.is_zero();
    } catch (const Error&) {
      zero = false;
      c.f_residual = c.g_residual = std::numeric_limits<double>::infinity();
    }
    c.normalized = normalized_pair(pair.f, pair.g, params, 0.0);
    c.status = zero && c.normalized ? CertStatus::exact : CertStatus::failed;
    return c;
  }
  const FloatPoly target = to_float(params.wronskian_target());
  FloatPoly defect = wronskian(pair.f_num, pair.g_num) - target;
  const double scale = std::max({1.0, max_abs_coeff(target), max_abs_coeff(pair.f_num) * max_abs_coeff(pair.g_num)});
  c.wronskian_residual = max_abs_coeff(defect) / scale;
  try {
    auto D = make_operator<Complex>(params, pair.h_num);
    const double hs = std::max(1.0, max_abs(pair.h_num));
    c.f_residual = max_abs_coeff(D.apply(pair.f_num)) / (hs * std::max(1.0, max_abs_coeff(pair.f_num)));
    c.g_residual = max_abs_coeff(D.apply(pair.g_num)) / (hs * std::max(1.0, max_abs_coeff(pair.g_num)));
  } catch (const Error&) {
    c.f_residual = c.g_residual = std::numeric_limits<double>::infinity();
  }
  FloatPoly fn = pair.f_num, gn = pair.g_num;
  fn.normalize(options.tol);
  gn.normalize(options.tol);
  c.normalized = normalized_pair(fn, gn, params, 1e-8);
  const bool ok = c.wronskian_residual <= options.tol && c.f_residual <= options.tol && c.g_residual <= options.tol;
  c.status = ok && c.normalized ? CertStatus::numeric : CertStatus::failed;
  return c;
}

void fill_numeric(WronskiPair& pair, const ModelParams& params) {
  pair.f_num = to_float(pair.f);
  pair.g_num = to_float(pair.g);
  pair.h_num = to_complex(pair.h);
  pair.roots = roots_of(pair.f, params);
}

WronskiPair pair_from_f(const ExactPoly& f, const ModelParams& params, const Rational& gauge) {
  if (f.degree() != params.l || !f.is_monic())
    throw Error(ErrorCode::InvalidArgument, "f must be monic of degree l");
  const long lt = params.l_tilde_int();
  const bool gauged = lt > params.l;
  std::vector<long> unknowns;
  for (long k = 0; k < lt; ++k)
    if (!(gauged && k == params.l)) unknowns.push_back(k);
  ExactPoly fixed = ExactPoly::monomial(lt);
  if (gauged) fixed += ExactPoly::monomial(params.l, gauge);
  const ExactPoly target = params.wronskian_target();
  const ExactPoly base = wronskian(f, fixed);
  const std::size_t rows = static_cast<std::size_t>(std::max<long>(lt + params.l, target.degree() + 1));
  QMatrix M(rows, unknowns.size());
  QVector rhs(rows);
  for (std::size_t j = 0; j < unknowns.size(); ++j) {
    ExactPoly col = wronskian(f, ExactPoly::monomial(unknowns[j]));
    for (std::size_t r = 0; r < rows; ++r) M(r, j) = col.coeff(r);
  }
  for (std::size_t r = 0; r < rows; ++r) rhs[r] = target.coeff(r) - base.coeff(r);
  auto sol = solve_any<Rational>(M, rhs, 0.0);
  if (!sol) throw Error(ErrorCode::NoCompanion, "f has no Wronskian companion");
  WronskiPair pair;
  pair.exact = true;
  pair.f = f;
  pair.g = fixed;
  for (std::size_t j = 0; j < unknowns.size(); ++j) pair.g += ExactPoly::monomial(unknowns[j], (*sol)[j]);
  try {
    pair.h = h_from_b(b_from_roots(f, params), params.n);
  } catch (const Error& e) {
    throw Error(ErrorCode::NoCompanion, std::string("companion found but B is not polynomial: ") + e.what());
  }
  fill_numeric(pair, params);
  pair.certificate = verify_pair(pair, params);
  return pair;
}

std::optional<WronskiPair> pair_from_exact_h(const std::vector<Rational>& h, const ModelParams& params) {
  try {
    WronskiPair pair;
    pair.exact = true;
    pair.h = h;
    pair.f = kernel_poly<Rational>(h, params.l, params);
    pair.g = kernel_poly<Rational>(h, params.l_tilde_int(), params);
    fill_numeric(pair, params);
    pair.certificate = verify_pair(pair, params);
    if (pair.certificate.status != CertStatus::exact) return std::nullopt;
    return pair;
  } catch (const Error&) {
    return std::nullopt;
  }
}

WronskiPair pair_from_h(const std::vector<Complex>& h, const ModelParams& params, const VerifyOptions& options) {
  WronskiPair pair;
  pair.h_num = h;
  KernelOptions ko;
  ko.tol = 1e-8;
  pair.f_num = kernel_poly<Complex>(h, params.l, params, ko);
  pair.g_num = kernel_poly<Complex>(h, params.l_tilde_int(), params, ko);
  pair.roots.t = polynomial_roots(pair.f_num);
  pair.roots.classification = bae_residual(pair.roots.t, params).classification;
  pair.certificate = verify_pair(pair, params, options);
  return pair;
}

}  // namespace xxxlab
