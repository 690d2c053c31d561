#include "xxxlab/qsystem/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>
#include <random>

#include "xxxlab/exactmath/linalg.hpp"
#include "xxxlab/exactmath/numeric.hpp"
#include "xxxlab/exactmath/parallel.hpp"

namespace xxxlab {

const char* to_string(SolveMethod m) {
  switch (m) {
    case SolveMethod::eigen_seeded:
      return "eigen_seeded";
    case SolveMethod::newton_multistart:
      return "newton_multistart";
    case SolveMethod::exact_elimination:
      return "exact_elimination";
  }
  return "?";
}

SolveMethod parse_solve_method(const std::string& s) {
  if (s == "eigen_seeded") return SolveMethod::eigen_seeded;
  if (s == "newton_multistart") return SolveMethod::newton_multistart;
  if (s == "exact_elimination") return SolveMethod::exact_elimination;
  throw Error(ErrorCode::InvalidArgument, "unknown method '" + s + "'");
}

namespace {

std::vector<Complex> fixed_h(const ModelParams& params) {
  auto [o1, o2] = q12_offsets(params);
  std::vector<Complex> h(params.n, 0.0);
  h[0] = to_double(o1);
  if (params.n >= 2) h[1] = to_double(o2);
  return h;
}

double norm_inf(const std::vector<Complex>& v, std::size_t from = 0) {
  double m = 0.0;
  for (std::size_t i = from; i < v.size(); ++i) m = std::max(m, std::abs(v[i]));
  return m;
}

struct Evaluation {
  std::vector<Complex> F;
  Eigen::MatrixXcd J;
  double scale = 1.0;
};

// F = q_{l+3..l+n}(a(h), h) and its Jacobian in h_3..h_n, with a(h) from the
// triangular block eliminated.
Evaluation evaluate(const std::vector<Complex>& h, const ModelParams& params, bool jacobian) {
  const int n = params.n, l = params.l;
  auto tri = triangular_solve<Complex>(h, params);
  Evaluation ev;
  ev.F = tri.rest;
  FloatPoly p = monic_from_tail<Complex>(tri.a);
  ev.scale = std::max(1.0, norm_inf(h)) * std::max(1.0, max_abs_coeff(p));
  if (!jacobian || n <= 2) return ev;
  auto D = make_operator<Complex>(params, h);
  const int rows = l + n - 2, top = l + n - 3;
  auto coeff_col = [&](const FloatPoly& r) {
    Eigen::VectorXcd c(rows);
    for (int k = 0; k < rows; ++k) c(k) = r.coeff(static_cast<std::size_t>(top - k));
    return c;
  };
  Eigen::MatrixXcd Ja(rows, l), Jh(rows, n - 2);
  for (int i = 1; i <= l; ++i) Ja.col(i - 1) = coeff_col(D.apply(FloatPoly::monomial(l - i)));
  const FloatPoly p1 = shift(p, -1);
  for (int k = 3; k <= n; ++k) Jh.col(k - 3) = coeff_col(-(FloatPoly::monomial(n - k) * p1));
  if (l == 0) {
    ev.J = Jh;
    return ev;
  }
  Eigen::MatrixXcd Ta = Ja.topRows(l), Th = Jh.topRows(l);
  Eigen::MatrixXcd Ra = Ja.bottomRows(n - 2), Rh = Jh.bottomRows(n - 2);
  ev.J = Rh - Ra * Ta.triangularView<Eigen::Lower>().solve(Th);
  return ev;
}

}  // namespace

double scheme_residual(const std::vector<Complex>& h, const ModelParams& params) {
  auto ev = evaluate(h, params, false);
  return norm_inf(ev.F) / ev.scale;
}

NewtonResult newton_refine(std::vector<Complex> h, const ModelParams& params, int max_iterations, double tol) {
  NewtonResult out;
  auto base = fixed_h(params);
  h.resize(params.n);
  h[0] = base[0];
  if (params.n >= 2) h[1] = base[1];
  auto ev = evaluate(h, params, true);
  double res = norm_inf(ev.F) / ev.scale;
  for (int it = 0; it < max_iterations && params.n > 2; ++it) {
    ++out.iterations;
    Eigen::VectorXcd rhs = -to_eigen(ev.F);
    Eigen::VectorXcd step = ev.J.fullPivLu().solve(rhs);
    if (!step.allFinite()) break;
    double lambda = 1.0;
    bool improved = false;
    std::vector<Complex> trial = h;
    Evaluation tev;
    double tres = res;
    for (int half = 0; half < 30; ++half) {
      for (int k = 2; k < params.n; ++k) trial[k] = h[k] + lambda * step(k - 2);
      tev = evaluate(trial, params, true);
      tres = norm_inf(tev.F) / tev.scale;
      if (std::isfinite(tres) && tres < res) {
        improved = true;
        break;
      }
      lambda *= 0.5;
    }
    const double step_size = lambda * step.cwiseAbs().maxCoeff();
    if (!improved) break;
    h = trial;
    ev = std::move(tev);
    res = tres;
    if (res <= 1e-15 || step_size <= 1e-15 * std::max(1.0, norm_inf(h, 2))) break;
  }
  if (params.n > 2) {
    try {
      if (auto refined = wronskian_refine(h, params)) {
        const double rres = scheme_residual(*refined, params);
        if (rres <= std::max(res, tol)) {
          h = *refined;
          res = rres;
        }
      }
    } catch (const Error&) {
    }
  }
  out.h = h;
  out.residual = res;
  out.converged = std::isfinite(res) && res <= tol;
  return out;
}

std::optional<std::vector<Complex>> wronskian_refine(const std::vector<Complex>& h, const ModelParams& params,
                                                     int max_iterations) {
  const int l = params.l;
  const long lt = params.l_tilde_int();
  if (l < 1 || lt <= l) return std::nullopt;
  const auto tri = triangular_solve<Complex>(h, params);
  FloatPoly f = monic_from_tail<Complex>(tri.a);
  const FloatPoly target = lift_poly<Complex>(params.wronskian_target());
  const std::size_t rows = static_cast<std::size_t>(l + lt - 1);
  std::vector<long> gfree;
  for (long j = 0; j < lt; ++j)
    if (j != l) gfree.push_back(j);
  auto mono = [](long k) {
    std::vector<Complex> c(static_cast<std::size_t>(k + 1), Complex(0));
    c.back() = Complex(1);
    return FloatPoly(std::move(c));
  };
  auto column = [&](const FloatPoly& p, Eigen::MatrixXcd& m, Eigen::Index col) {
    for (std::size_t k = 0; k < rows; ++k) m(static_cast<Eigen::Index>(k), col) = p.coeff(static_cast<long>(k));
  };
  auto residual = [&](const FloatPoly& ff, const FloatPoly& gg) {
    FloatPoly r = wronskian(ff, gg) - target;
    Eigen::VectorXcd v(static_cast<Eigen::Index>(rows));
    for (std::size_t k = 0; k < rows; ++k) v(static_cast<Eigen::Index>(k)) = r.coeff(static_cast<long>(k));
    return v;
  };
  // g from the linear equation at fixed f
  FloatPoly g = mono(lt);
  {
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(gfree.size()));
    for (std::size_t j = 0; j < gfree.size(); ++j) column(wronskian(f, mono(gfree[j])), m, static_cast<Eigen::Index>(j));
    Eigen::VectorXcd c = m.completeOrthogonalDecomposition().solve(-residual(f, g));
    for (std::size_t j = 0; j < gfree.size(); ++j) g += mono(gfree[j]) * FloatPoly({c(static_cast<Eigen::Index>(j))});
  }
  const double scale = std::max(1.0, max_abs_coeff(target));
  double res = residual(f, g).cwiseAbs().maxCoeff() / scale;
  for (int it = 0; it < max_iterations && res > 1e-15; ++it) {
    Eigen::MatrixXcd J(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(rows));
    for (int i = 0; i < l; ++i) column(wronskian(mono(i), g), J, i);
    for (std::size_t j = 0; j < gfree.size(); ++j) column(wronskian(f, mono(gfree[j])), J, l + static_cast<Eigen::Index>(j));
    Eigen::VectorXcd step = J.fullPivLu().solve(-residual(f, g));
    if (!step.allFinite()) return std::nullopt;
    std::vector<Complex> fc = f.coeffs(), gc = g.coeffs();
    fc.resize(static_cast<std::size_t>(l + 1));
    gc.resize(static_cast<std::size_t>(lt + 1));
    for (int i = 0; i < l; ++i) fc[static_cast<std::size_t>(i)] += step(i);
    for (std::size_t j = 0; j < gfree.size(); ++j)
      gc[static_cast<std::size_t>(gfree[j])] += step(l + static_cast<Eigen::Index>(j));
    FloatPoly nf(std::move(fc)), ng(std::move(gc));
    const double nres = residual(nf, ng).cwiseAbs().maxCoeff() / scale;
    if (!std::isfinite(nres)) return std::nullopt;
    const bool stalled = nres >= res;
    f = std::move(nf);
    g = std::move(ng);
    res = nres;
    if (stalled) break;
  }
  if (res > 1e-12) return std::nullopt;
  try {
    auto out = h_from_b<Complex>(b_from_roots<Complex>(f, params, 1e-8), params.n);
    return out;
  } catch (const Error&) {
    return std::nullopt;
  }
}

WronskiPair certify_point(const std::vector<Complex>& h, const ModelParams& params, std::int64_t bound) {
  std::vector<Rational> hq;
  for (const auto& x : h) {
    auto r = rational_reconstruct(x, bound);
    if (!r) break;
    hq.push_back(*r);
  }
  if (hq.size() == h.size()) {
    auto [o1, o2] = q12_offsets(params);
    hq[0] = o1;
    if (params.n >= 2) hq[1] = o2;
    if (auto pair = pair_from_exact_h(hq, params)) return *pair;
  }
  return pair_from_h(h, params);
}

namespace {

struct Candidate {
  std::vector<Complex> h;
};

// Keeps the first of every cluster of points within tol (max-norm).
std::vector<Candidate> dedupe(const std::vector<Candidate>& in, double tol, std::size_t& merges) {
  std::vector<Candidate> out;
  for (const auto& c : in) {
    bool dup = false;
    for (const auto& o : out) {
      double d = 0.0;
      for (std::size_t k = 0; k < c.h.size(); ++k) d = std::max(d, std::abs(c.h[k] - o.h[k]));
      if (d <= tol) {
        dup = true;
        break;
      }
    }
    if (dup)
      ++merges;
    else
      out.push_back(c);
  }
  return out;
}

std::vector<Complex> coefficient_vector(const WronskiPair& p) {
  std::vector<Complex> v = p.f_num.coeffs();
  v.insert(v.end(), p.g_num.coeffs().begin(), p.g_num.coeffs().end());
  return v;
}

void finish(SolveReport& report, const std::vector<Candidate>& points, const ModelParams& params,
            const SolveOptions& options) {
  std::vector<WronskiPair> pairs(points.size());
  std::vector<std::string> errors(points.size());
  parallel_for(points.size(), options.threads, [&](std::size_t i) {
    try {
      pairs[i] = certify_point(points[i].h, params, options.reconstruct_bound);
    } catch (const Error& e) {
      errors[i] = e.what();
    }
  });
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!errors[i].empty()) {
      report.notes.push_back("point dropped: " + errors[i]);
      continue;
    }
    if (pairs[i].certificate.status == CertStatus::failed) {
      report.notes.push_back("point failed certification");
      continue;
    }
    report.pairs.push_back(std::move(pairs[i]));
  }
  std::sort(report.pairs.begin(), report.pairs.end(), [](const WronskiPair& a, const WronskiPair& b) {
    for (std::size_t k = 0; k < a.h_num.size(); ++k) {
      if (std::abs(a.h_num[k].real() - b.h_num[k].real()) > 1e-9) return a.h_num[k].real() < b.h_num[k].real();
      if (std::abs(a.h_num[k].imag() - b.h_num[k].imag()) > 1e-9) return a.h_num[k].imag() < b.h_num[k].imag();
    }
    return false;
  });
  report.min_separation = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < report.pairs.size(); ++i)
    for (std::size_t j = i + 1; j < report.pairs.size(); ++j) {
      auto a = coefficient_vector(report.pairs[i]), b = coefficient_vector(report.pairs[j]);
      a.resize(std::max(a.size(), b.size()));
      b.resize(a.size());
      double d = 0.0;
      for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
      report.min_separation = std::min(report.min_separation, d);
    }
}

// Runs Newton from every start; returns the converged, deduplicated points.
std::vector<Candidate> run_starts(const std::vector<std::vector<Complex>>& starts, const ModelParams& params,
                                  const SolveOptions& options, SolveReport& report) {
  std::vector<NewtonResult> results(starts.size());
  std::vector<char> ran(starts.size(), 0);
  std::mutex budget_mutex;
  std::size_t used = 0;
  bool exhausted = false;
  parallel_for(starts.size(), options.threads, [&](std::size_t i) {
    {
      std::lock_guard<std::mutex> lock(budget_mutex);
      if (options.iteration_budget && used >= options.iteration_budget) {
        exhausted = true;
        return;
      }
    }
    try {
      results[i] = newton_refine(starts[i], params, options.max_iterations, options.newton_tol);
      ran[i] = 1;
    } catch (const Error&) {
    }
    std::lock_guard<std::mutex> lock(budget_mutex);
    used += static_cast<std::size_t>(results[i].iterations);
  });
  report.stats.starts += starts.size();
  report.stats.newton_iterations += used;
  report.budget_exceeded = exhausted;
  std::vector<Candidate> conv;
  for (std::size_t i = 0; i < starts.size(); ++i)
    if (ran[i] && results[i].converged) conv.push_back({results[i].h});
  report.stats.converged += conv.size();
  return dedupe(conv, options.dedup_tol, report.stats.dedup_merges);
}

// ---- exact elimination -------------------------------------------------

using RFun = std::function<Rational(const Rational&)>;

Rational node(std::size_t i) { return make_rational(static_cast<long>(7 * i + 3), 5); }

// Interpolates a univariate polynomial of unknown degree (<= max_deg).
std::optional<ExactPoly> interpolate_discover(const RFun& f, std::size_t max_deg) {
  std::vector<Rational> xs, ys;
  auto extend = [&](std::size_t count) {
    while (xs.size() < count) {
      xs.push_back(node(xs.size()));
      ys.push_back(f(xs.back()));
    }
  };
  for (std::size_t d = 1;; d *= 2) {
    if (d > max_deg) d = max_deg;
    extend(d + 3);
    ExactPoly p = interpolate(std::span(xs).first(d + 1), std::span(ys).first(d + 1));
    if (p.evaluate(xs[d + 1]) == ys[d + 1] && p.evaluate(xs[d + 2]) == ys[d + 2]) return p;
    if (d == max_deg) return std::nullopt;
  }
}

ExactPoly interpolate_fixed(const RFun& f, std::size_t deg) {
  std::vector<Rational> xs, ys;
  for (std::size_t i = 0; i <= deg; ++i) {
    xs.push_back(node(i));
    ys.push_back(f(xs.back()));
  }
  return interpolate(xs, ys);
}

Rational sylvester_resultant(const ExactPoly& a, std::size_t da, const ExactPoly& b, std::size_t db) {
  const std::size_t N = da + db;
  if (N == 0) return 1;
  QMatrix S(N, N);
  for (std::size_t r = 0; r < db; ++r)
    for (std::size_t k = 0; k <= da; ++k) S(r, r + k) = a.coeff(da - k);
  for (std::size_t r = 0; r < da; ++r)
    for (std::size_t k = 0; k <= db; ++k) S(db + r, r + k) = b.coeff(db - k);
  return determinant(S);
}

std::vector<Rational> exact_fixed(const ModelParams& params) {
  auto [o1, o2] = q12_offsets(params);
  std::vector<Rational> h(params.n, Rational(0));
  h[0] = o1;
  if (params.n >= 2) h[1] = o2;
  return h;
}

std::vector<Rational> exact_F(const ModelParams& params, const std::vector<Rational>& free) {
  auto h = exact_fixed(params);
  for (std::size_t k = 0; k < free.size(); ++k) h[2 + k] = free[k];
  return triangular_solve<Rational>(h, params).rest;
}

std::vector<Candidate> exact_elimination_points(const ModelParams& params, const SolveOptions& options,
                                                SolveReport& report) {
  const int n = params.n;
  const std::size_t max_deg = 64;
  std::vector<Candidate> pts;
  auto polish_and_add = [&](std::vector<Complex> h) {
    auto r = newton_refine(std::move(h), params, options.max_iterations, options.newton_tol);
    report.stats.newton_iterations += r.iterations;
    ++report.stats.starts;
    if (r.converged) {
      ++report.stats.converged;
      pts.push_back({r.h});
    }
  };
  if (n <= 2) {
    auto h = exact_fixed(params);
    pts.push_back({to_complex(h)});
    return pts;
  }
  if (n == 3) {
    auto F = interpolate_discover([&](const Rational& s) { return exact_F(params, {s})[0]; }, max_deg);
    if (!F) throw Error(ErrorCode::SolverBudgetExceeded, "elimination: degree bound exceeded");
    report.notes.push_back("eliminant degree " + std::to_string(F->degree()));
    const ExactPoly Fs = F->degree() > 0 ? divide_exact(*F, gcd(*F, derivative(*F))) : *F;
    for (Complex s : polynomial_roots(to_float(Fs))) {
      auto h = to_complex(exact_fixed(params));
      h[2] = s;
      polish_and_add(h);
    }
    return dedupe(pts, options.dedup_tol, report.stats.dedup_merges);
  }
  if (n != 4) throw Error(ErrorCode::PreconditionViolated, "exact_elimination needs n <= 4");
  // Degrees in h4 at a generic h3.
  const Rational s0 = make_rational(-11, 13);
  std::size_t d[2];
  for (int i = 0; i < 2; ++i) {
    auto g = interpolate_discover([&](const Rational& t) { return exact_F(params, {s0, t})[i]; }, max_deg);
    if (!g) throw Error(ErrorCode::SolverBudgetExceeded, "elimination: degree bound exceeded");
    d[i] = static_cast<std::size_t>(std::max<long>(0, g->degree()));
  }
  auto slice = [&](const Rational& s, int i) {
    return interpolate_fixed([&](const Rational& t) { return exact_F(params, {s, t})[i]; }, d[i]);
  };
  auto R = interpolate_discover(
      [&](const Rational& s) { return sylvester_resultant(slice(s, 0), d[0], slice(s, 1), d[1]); }, max_deg);
  if (!R) throw Error(ErrorCode::SolverBudgetExceeded, "elimination: resultant degree bound exceeded");
  if (R->is_zero()) throw Error(ErrorCode::SolverBudgetExceeded, "elimination: resultant vanishes identically");
  report.notes.push_back("resultant degree " + std::to_string(R->degree()));
  // Square-free part, so that clustered roots do not scatter.
  const ExactPoly Rs = R->degree() > 0 ? divide_exact(*R, gcd(*R, derivative(*R))) : *R;
  for (Complex s : polynomial_roots(to_float(Rs))) {
    // Exact route when the root is rational: common roots of the two slices.
    if (auto sq = rational_reconstruct(s, options.reconstruct_bound); sq && Rs.evaluate(*sq) == 0) {
      ExactPoly common = gcd(slice(*sq, 0), slice(*sq, 1));
      for (Complex t : polynomial_roots(to_float(common))) {
        auto h = to_complex(exact_fixed(params));
        h[2] = to_double(*sq);
        h[3] = t;
        polish_and_add(h);
      }
      continue;
    }
    // Otherwise: roots in h4 of the first slice, kept when Newton converges.
    std::vector<Complex> xs, ys;
    const std::size_t d0 = d[0];
    CMatrix V(d0 + 1, d0 + 1);
    CVector rhs(d0 + 1);
    for (std::size_t i = 0; i <= d0; ++i) {
      Complex t = to_double(node(i));
      auto h = to_complex(exact_fixed(params));
      h[2] = s;
      h[3] = t;
      rhs[i] = evaluate(h, params, false).F[0];
      Complex pw = 1.0;
      for (std::size_t k = 0; k <= d0; ++k, pw *= t) V(i, k) = pw;
    }
    auto ls = least_squares(V, rhs);
    for (Complex t : polynomial_roots(FloatPoly(ls.x))) {
      auto h = to_complex(exact_fixed(params));
      h[2] = s;
      h[3] = t;
      polish_and_add(h);
    }
  }
  return dedupe(pts, options.dedup_tol, report.stats.dedup_merges);
}

}  // namespace

SolveReport enumerate_pairs(const ModelParams& params, SolveMethod method, const SolveOptions& options) {
  SolveReport report;
  report.method = method;
  if (params.unit_weights() && 2 * params.l <= params.n) report.expected = expected_count(params);
  std::vector<Candidate> points;
  switch (method) {
    case SolveMethod::eigen_seeded: {
      if (options.seeds.empty())
        throw Error(ErrorCode::PreconditionViolated, "eigen_seeded needs eigenvalue tuples as seeds");
      points = run_starts(options.seeds, params, options, report);
      break;
    }
    case SolveMethod::newton_multistart: {
      const std::size_t count = options.starts ? options.starts : 200 * static_cast<std::size_t>(std::max(1, params.n - 2));
      std::mt19937_64 rng(options.seed);
      std::normal_distribution<double> gauss(0.0, static_cast<double>(params.n));
      std::vector<std::vector<Complex>> starts(count, fixed_h(params));
      for (auto& h : starts)
        for (int k = 2; k < params.n; ++k) {
          double re = gauss(rng), im = gauss(rng);
          h[k] = Complex(re, im);
        }
      points = run_starts(starts, params, options, report);
      break;
    }
    case SolveMethod::exact_elimination:
      points = exact_elimination_points(params, options, report);
      break;
  }
  finish(report, points, params, options);
  if (report.budget_exceeded) throw BudgetExceeded(report);
  return report;
}

}  // namespace xxxlab
