#include "xxxlab/sovrep/sov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "xxxlab/exactmath/combinatorics.hpp"
#include "xxxlab/spinchain/monodromy.hpp"

namespace xxxlab {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

// Polynomial in y_1..y_r keyed by exponent vectors.
using YPoly = std::map<std::vector<int>, Rational>;

YPoly multiply(const YPoly& a, const YPoly& b) {
  YPoly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::vector<int> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out[e] += ca * cb;
    }
  std::erase_if(out, [](const auto& kv) { return sgn(kv.second) == 0; });
  return out;
}

// (-1)^k sigma_k(y_1..y_r)
YPoly signed_elementary(int r, int k) {
  YPoly out;
  std::vector<int> mask(static_cast<std::size_t>(r), 0);
  std::fill(mask.end() - k, mask.end(), 1);
  do {
    out[mask] = (k % 2 == 0) ? Rational(1) : Rational(-1);
  } while (std::next_permutation(mask.begin(), mask.end()));
  return out;
}

std::vector<std::vector<int>> x_monomials(int n, int l) {
  std::vector<std::vector<int>> out;
  std::vector<int> e(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == n - 1) {
      e[static_cast<std::size_t>(i)] = left;
      out.push_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[static_cast<std::size_t>(i)] = k;
      self(self, i + 1, left - k);
    }
  };
  rec(rec, 0, l);
  return out;
}

// Integer sample points from a ladder; coordinates differ pairwise by at
// least 2, so no two collide under a unit shift.
std::vector<std::vector<Rational>> sample_points(int r, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const long span = 4L * r + 4;
  std::vector<std::vector<Rational>> pts;
  while (pts.size() < count) {
    std::vector<long> y;
    while (static_cast<int>(y.size()) < r) {
      const long c = static_cast<long>(rng() % static_cast<std::uint64_t>(2 * span + 1)) - span;
      if (std::all_of(y.begin(), y.end(), [&](long x) { return std::abs(x - c) >= 2; })) y.push_back(c);
    }
    pts.emplace_back(y.begin(), y.end());
  }
  return pts;
}

std::vector<Rational> basis_values(const SoVBasis& basis, std::span<const Rational> y) {
  std::vector<Rational> v;
  v.reserve(basis.dim());
  for (const auto& lam : basis.parts) v.push_back(monomial_symmetric(lam, y));
  return v;
}

QMatrix scalar_matrix(std::size_t d, const Rational& c) { return c * QMatrix::identity(d); }

template <class T>
double vec_norm(const std::vector<T>& v) {
  double s = 0.0;
  for (const auto& x : v) s = std::max(s, magnitude(x));
  return s;
}

CMatrix to_complex_matrix(const QMatrix& m) { return to_complex(m); }

}  // namespace

std::vector<BoxPartition> box_partitions(int rows, int l) {
  std::vector<BoxPartition> out;
  if (rows < 0 || l < 0) return out;
  BoxPartition p(static_cast<std::size_t>(rows), 0);
  auto rec = [&](auto&& self, int i, int cap) -> void {
    if (i == rows) {
      out.push_back(p);
      return;
    }
    for (int k = 0; k <= cap; ++k) {
      p[static_cast<std::size_t>(i)] = k;
      self(self, i + 1, k);
    }
  };
  rec(rec, 0, l);
  std::sort(out.begin(), out.end(), [](const BoxPartition& a, const BoxPartition& b) {
    int sa = 0, sb = 0;
    for (int x : a) sa += x;
    for (int x : b) sb += x;
    if (sa != sb) return sa < sb;
    return a > b;
  });
  return out;
}

SoVBasis sov_basis(int n, int l) {
  if (n < 2 || l < 0) throw Error(ErrorCode::InvalidArgument, "SoV needs n >= 2 and l >= 0");
  SoVBasis b;
  b.n = n;
  b.l = l;
  b.parts = box_partitions(n - 1, l);
  for (std::size_t i = 0; i < b.parts.size(); ++i) b.index[b.parts[i]] = i;
  if (static_cast<long long>(b.dim()) != binomial(n - 1 + l, l))
    throw Error(ErrorCode::PreconditionViolated, "SoV basis dimension differs from dim W[l]");
  return b;
}

Rational monomial_symmetric(const BoxPartition& lambda, std::span<const Rational> y) {
  std::vector<int> e(lambda.begin(), lambda.end());
  std::sort(e.begin(), e.end());
  Rational total = 0;
  do {
    Rational t = 1;
    for (std::size_t j = 0; j < e.size(); ++j)
      for (int k = 0; k < e[j]; ++k) t *= y[j];
    total += t;
  } while (std::next_permutation(e.begin(), e.end()));
  return total;
}

std::vector<Rational> xy_transform(const XPoly& p, const SoVBasis& basis) {
  const int n = basis.n, r = n - 1;
  YPoly total;
  for (const auto& [e, c] : p) {
    if (static_cast<int>(e.size()) != n) throw Error(ErrorCode::InvalidArgument, "x-monomial has wrong arity");
    int deg = 0;
    for (int x : e) deg += x;
    if (deg != basis.l) throw Error(ErrorCode::InvalidArgument, "x-polynomial is not homogeneous of degree l");
    YPoly term{{std::vector<int>(static_cast<std::size_t>(r), 0), c}};
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < e[static_cast<std::size_t>(i)]; ++k) term = multiply(term, signed_elementary(r, i));
    for (const auto& [ye, yc] : term) total[ye] += yc;
  }
  std::vector<Rational> out(basis.dim(), Rational(0));
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    auto it = total.find(basis.parts[i]);
    if (it != total.end()) out[i] = it->second;
  }
  return out;
}

XPoly yx_transform(std::span<const Rational> v, const SoVBasis& basis) {
  auto monos = x_monomials(basis.n, basis.l);
  if (monos.size() != basis.dim()) throw Error(ErrorCode::PreconditionViolated, "x and y dimensions differ");
  std::vector<QVector> cols;
  for (const auto& e : monos) cols.push_back(xy_transform(XPoly{{e, Rational(1)}}, basis));
  auto c = solve_matrix(QMatrix::from_columns(cols, basis.dim()), QMatrix::from_columns({QVector(v.begin(), v.end())}, basis.dim()));
  XPoly out;
  for (std::size_t i = 0; i < monos.size(); ++i)
    if (sgn(c(i, 0)) != 0) out[monos[i]] = c(i, 0);
  return out;
}

SklyaninOps sklyanin_ops(const ModelParams& params, int l, std::size_t held_out) {
  const int n = params.n, r = n - 1;
  SklyaninOps ops;
  ops.basis = sov_basis(n, l);
  const std::size_t d = ops.basis.dim();
  ops.held_out = held_out;
  ops.e22 = scalar_matrix(d, Rational(l));
  ops.e11 = scalar_matrix(d, params.sum_m() - Rational(l));
  Rational sum_z = 0;
  for (const auto& z : params.z) sum_z += z;
  const ExactPoly A = params.a(), D = params.d();
  const Rational c11 = params.sum_m() - Rational(l) - sum_z, c22 = Rational(l) - sum_z;

  for (int attempt = 0; attempt < 5; ++attempt) {
    auto pts = sample_points(r, d + held_out, 0x5eed + static_cast<std::uint64_t>(attempt));
    QMatrix E(d, d);
    std::vector<std::vector<Rational>> vals(pts.size());
    for (std::size_t s = 0; s < pts.size(); ++s) vals[s] = basis_values(ops.basis, pts[s]);
    for (std::size_t s = 0; s < d; ++s)
      for (std::size_t i = 0; i < d; ++i) E(s, i) = vals[s][i];
    if (rank(E) < d) {
      ++ops.resamples;
      continue;
    }

    // Per sample: the diagonal parts (u + c + sum y) prod (u - y_j) and the
    // shift parts a(y_j) L_j(u), d(y_j) L_j(u) with L_j the Lagrange basis.
    const std::size_t ns = pts.size(), deg = static_cast<std::size_t>(n + 1);
    std::vector<std::vector<std::vector<Rational>>> down(ns), up(ns);
    std::vector<ExactPoly> base11(ns), base22(ns);
    std::vector<std::vector<ExactPoly>> lagA(ns), lagD(ns);
    for (std::size_t s = 0; s < ns; ++s) {
      const auto& y = pts[s];
      const ExactPoly prod = from_roots<Rational>(y);
      Rational sum_y = 0;
      for (const auto& x : y) sum_y += x;
      base11[s] = ExactPoly({c11 + sum_y, Rational(1)}) * prod;
      base22[s] = ExactPoly({c22 + sum_y, Rational(1)}) * prod;
      for (int j = 0; j < r; ++j) {
        const auto js = static_cast<std::size_t>(j);
        auto ym = y, yp = y;
        ym[js] -= 1;
        yp[js] += 1;
        down[s].push_back(basis_values(ops.basis, ym));
        up[s].push_back(basis_values(ops.basis, yp));
        ExactPoly L = ExactPoly::constant(Rational(1));
        for (int k = 0; k < r; ++k) {
          if (k == j) continue;
          const Rational den = y[js] - y[static_cast<std::size_t>(k)];
          L = L * ExactPoly({-y[static_cast<std::size_t>(k)] / den, Rational(1) / den});
        }
        lagA[s].push_back(ExactPoly::constant(A.evaluate(y[js])) * L);
        lagD[s].push_back(ExactPoly::constant(D.evaluate(y[js])) * L);
      }
    }

    // V[which][k](s, mu): u^k coefficient of T~ m_mu at sample s
    std::vector<std::vector<QMatrix>> V(2, std::vector<QMatrix>(deg, QMatrix(ns, d)));
    for (std::size_t s = 0; s < ns; ++s)
      for (std::size_t k = 0; k < deg; ++k) {
        const long kk = static_cast<long>(k);
        for (std::size_t mu = 0; mu < d; ++mu) {
          Rational v11 = vals[s][mu] * base11[s].coeff(kk), v22 = vals[s][mu] * base22[s].coeff(kk);
          for (int j = 0; j < r; ++j) {
            const auto js = static_cast<std::size_t>(j);
            v11 += down[s][js][mu] * lagA[s][js].coeff(kk);
            v22 += up[s][js][mu] * lagD[s][js].coeff(kk);
          }
          V[0][k](s, mu) = v11;
          V[1][k](s, mu) = v22;
        }
      }

    ops.T11.coeffs.assign(deg, QMatrix(d, d));
    ops.T22.coeffs.assign(deg, QMatrix(d, d));
    // one fraction-free solve for all 2 (n+1) right-hand sides
    QMatrix rhs(d, 2 * deg * d);
    for (int which = 0; which < 2; ++which)
      for (std::size_t k = 0; k < deg; ++k)
        for (std::size_t s = 0; s < d; ++s)
          for (std::size_t mu = 0; mu < d; ++mu)
            rhs(s, (static_cast<std::size_t>(which) * deg + k) * d + mu) = V[static_cast<std::size_t>(which)][k](s, mu);
    const QMatrix sol = solve_matrix(E, rhs);
    bool poles_ok = true;
    for (int which = 0; which < 2; ++which)
      for (std::size_t k = 0; k < deg; ++k) {
        QMatrix C(d, d);
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t mu = 0; mu < d; ++mu) C(i, mu) = sol(i, (static_cast<std::size_t>(which) * deg + k) * d + mu);
        for (std::size_t s = d; s < ns; ++s)
          for (std::size_t mu = 0; mu < d; ++mu) {
            Rational fit = 0;
            for (std::size_t i = 0; i < d; ++i) fit += vals[s][i] * C(i, mu);
            if (fit != V[static_cast<std::size_t>(which)][k](s, mu)) poles_ok = false;
          }
        (which == 0 ? ops.T11 : ops.T22).coeffs[k] = std::move(C);
      }
    ops.poles_cancel = poles_ok;
    return ops;
  }
  throw Error(ErrorCode::InterpolationDegeneracy, "no nondegenerate sample grid found");
}

SoVTransfer transfer_B_sov(const SklyaninOps& ops, int n) {
  SoVTransfer t;
  for (std::size_t k = 0; k < ops.T11.coeffs.size(); ++k) t.B.coeffs.push_back(ops.T11.coeffs[k] + ops.T22.coeffs[k]);
  for (int k = 0; k <= n; ++k) t.H.push_back(t.B.coeffs[static_cast<std::size_t>(n - k)]);
  return t;
}

QMatrix e21e12_op(const SklyaninOps& ops, const ModelParams& params) {
  const int n = params.n;
  const std::size_t d = ops.basis.dim();
  // T22(u - 1) = sum_k C_k (u-1)^k
  std::vector<QMatrix> S(static_cast<std::size_t>(n + 1), QMatrix(d, d));
  for (int k = 0; k <= n; ++k)
    for (int i = 0; i <= k; ++i) {
      Rational c(static_cast<long>(binomial(k, i)));
      if ((k - i) % 2 == 1) c = -c;
      S[static_cast<std::size_t>(i)] += c * ops.T22.coeffs[static_cast<std::size_t>(k)];
    }
  const ExactPoly ad = params.a() * shift(params.d(), -1);
  auto coeff = [&](int power) {
    QMatrix m = scalar_matrix(d, -ad.coeff(power));
    for (int i = std::max(0, power - n); i <= std::min(n, power); ++i)
      m += ops.T11.coeffs[static_cast<std::size_t>(i)] * S[static_cast<std::size_t>(power - i)];
    return m;
  };
  for (int p = 2 * n - 1; p <= 2 * n; ++p)
    if (!coeff(p).is_zero())
      throw Error(ErrorCode::PreconditionViolated, "quantum determinant identity fails at u^" + std::to_string(p));
  return coeff(2 * n - 2);
}

SoVModel sov_model(const ModelParams& params, int l) {
  SoVModel m;
  m.ops = sklyanin_ops(params, l);
  m.transfer = transfer_B_sov(m.ops, params.n);
  m.e21e12 = e21e12_op(m.ops, params);
  return m;
}

namespace {

template <class T>
EigencheckResult exact_check(std::span<const T> a, std::span<const T> h, const SoVModel& model) {
  EigencheckResult res;
  res.exact = true;
  auto omega = weight_fn<T>(a, model.ops.basis);
  res.omega_nonzero = std::any_of(omega.begin(), omega.end(), [](const T& x) { return !is_zero(x); });
  bool zero = true;
  for (std::size_t s = 1; s < model.transfer.H.size(); ++s) {
    auto w = model.transfer.H[s].template apply<T>(omega);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] -= h[s - 1] * omega[i];
    res.h_residuals.push_back(vec_norm(w));
    zero = zero && std::all_of(w.begin(), w.end(), [](const T& x) { return is_zero(x); });
  }
  auto sres = model.e21e12.template apply<T>(omega);
  res.singular_residual = vec_norm(sres);
  zero = zero && std::all_of(sres.begin(), sres.end(), [](const T& x) { return is_zero(x); });
  res.all_zero = zero && res.omega_nonzero;
  return res;
}

}  // namespace

EigencheckResult weight_fn_eigencheck(const WronskiPair& pair, const ModelParams&, const SoVModel& model,
                                      double tol) {
  if (pair.exact) {
    auto a = tail_of_monic(pair.f);
    return exact_check<Rational>(a, pair.h, model);
  }
  EigencheckResult res;
  auto a = tail_of_monic(pair.f_num);
  auto omega = weight_fn<Complex>(a, model.ops.basis);
  const double on = norm2(omega);
  res.omega_nonzero = on > 0.0;
  bool ok = res.omega_nonzero;
  for (std::size_t s = 1; s < model.transfer.H.size(); ++s) {
    CMatrix Hc = to_complex_matrix(model.transfer.H[s]);
    auto w = Hc.apply(omega);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] -= pair.h_num[s - 1] * omega[i];
    const double r = norm2(w) / (std::max(1.0, frobenius(Hc)) * std::max(on, 1e-300));
    res.h_residuals.push_back(r);
    ok = ok && r < tol;
  }
  CMatrix S = to_complex_matrix(model.e21e12);
  res.singular_residual = norm2(S.apply(omega)) / (std::max(1.0, frobenius(S)) * std::max(on, 1e-300));
  res.all_zero = ok && res.singular_residual < tol;
  return res;
}

EigencheckResult weight_fn_eigencheck(const std::vector<AlgebraElement>& h, const ModelParams& params,
                                      const SoVModel& model) {
  auto tri = triangular_solve<AlgebraElement>(h, params);
  auto res = exact_check<AlgebraElement>(tri.a, h, model);
  for (const auto& x : tri.rest)
    if (!x.is_zero()) res.all_zero = false;
  return res;
}

ShMap sh_map(const ModelParams& params, const SoVBasis& basis, std::size_t surplus) {
  const int n = params.n, l = basis.l;
  const std::size_t d = basis.dim();
  const std::size_t total = d + surplus;
  const std::size_t tdim = weight_indices(n, l).size();
  std::vector<long> primes;
  for (long c = 2; primes.size() < total * static_cast<std::size_t>(std::max(l, 1)) + 64; ++c) {
    bool prime = true;
    for (long p : primes) {
      if (p * p > c) break;
      if (c % p == 0) prime = false;
    }
    if (prime) primes.push_back(c);
  }
  Monodromy<Rational> mono(params);
  ShMap out;
  out.l = l;
  out.surplus = surplus;
  out.samples = total;
  for (int attempt = 0; attempt < 4; ++attempt) {
    QMatrix Y(d, total), Tm(tdim, total);
    for (std::size_t s = 0; s < total; ++s) {
      std::vector<Rational> w;
      for (int i = 0; i < l; ++i) {
        const std::size_t idx = (s * static_cast<std::size_t>(l) + static_cast<std::size_t>(i) + static_cast<std::size_t>(attempt) * 7) % primes.size();
        Rational wi(primes[idx]);
        if ((s + static_cast<std::size_t>(i)) % 2 == 1) wi = -wi;
        w.push_back(wi / Rational(attempt + 1));
      }
      // SoV side: y0^l prod_j Q(y_j), Q(y) = prod_i (w_i - y)
      ExactPoly Q = ExactPoly::constant(Rational(1));
      for (const auto& wi : w) Q = Q * ExactPoly({wi, Rational(-1)});
      for (std::size_t k = 0; k < d; ++k) {
        Rational c = 1;
        for (int e : basis.parts[k]) c *= Q.coeff(e);
        Y(k, s) = c;
      }
      std::vector<Rational> v(mono.dim(), Rational(0));
      v[0] = 1;
      for (const auto& wi : w) v = mono.apply_at(0, 1, wi, v);
      auto rv = restrict_weight<Rational>(n, l, v);
      for (std::size_t t = 0; t < tdim; ++t) Tm(t, s) = rv[t];
    }
    QMatrix Ysq(d, d), Tsq(tdim, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t s = 0; s < d; ++s) Ysq(i, s) = Y(i, s);
    for (std::size_t t = 0; t < tdim; ++t)
      for (std::size_t s = 0; s < d; ++s) Tsq(t, s) = Tm(t, s);
    try {
      out.sh = solve_matrix(Ysq.transpose(), Tsq.transpose()).transpose();
    } catch (const Error&) {
      ++out.resamples;
      continue;
    }
    bool ok = true;
    for (std::size_t s = d; s < total && ok; ++s) {
      auto img = out.sh.apply(Y.column(s));
      ok = img == Tm.column(s);
    }
    out.consistent = ok;
    return out;
  }
  throw Error(ErrorCode::RankDeficientSampling, "spanning samples do not span W[l]");
}

std::vector<bool> operator_transport(const ShMap& sh, const SoVTransfer& sov, const ModelParams& params) {
  Monodromy<Rational> mono(params);
  auto H = hamiltonians_on_weight(mono, sh.l);
  std::vector<bool> out;
  for (std::size_t k = 0; k < H.size() && k < sov.H.size(); ++k) out.push_back(sh.sh * sov.H[k] == H[k] * sh.sh);
  return out;
}

QMatrix sov_singular_basis(const QMatrix& e21e12) {
  auto ker = kernel_basis(e21e12);
  return QMatrix::from_columns(ker, e21e12.cols());
}

ExtractedLine extract_eigenvector(const std::vector<Complex>& h_star, const ModelParams& params, const SoVModel& model,
                                  const ShMap& sh) {
  const int n = params.n, l = model.ops.basis.l;
  if (static_cast<int>(h_star.size()) != n) throw Error(ErrorCode::InvalidArgument, "h_star needs n entries");
  const QMatrix G0 = sov_singular_basis(model.e21e12);
  const std::size_t g = G0.cols();
  if (g == 0) throw Error(ErrorCode::EmptyImage, "Sing W_y[l] is zero");
  auto restrict_to = [](const QMatrix& M, const QMatrix& basis) {
    QMatrix img = M * basis;
    QMatrix r(basis.cols(), basis.cols());
    for (std::size_t j = 0; j < basis.cols(); ++j) {
      auto c = coordinates_in(basis, img.column(j));
      for (std::size_t i = 0; i < basis.cols(); ++i) r(i, j) = c[i];
    }
    return r;
  };
  std::vector<QMatrix> R;
  for (const auto& Hk : model.transfer.H) R.push_back(restrict_to(Hk, G0));

  ExtractedLine out;
  for (int attempt = 0; attempt < 4; ++attempt) {
    // Y = sum c_k R_k; its characteristic polynomial, split by multiplicity,
    // isolates the stratum of h_star exactly.
    QMatrix Y(g, g);
    Complex ystar = 0.0;
    for (int k = 2; k <= n; ++k) {
      const long c = (k - 1) * (attempt + 1) + ((k * 7 + attempt * 3) % 5);
      Y += Rational(c) * R[static_cast<std::size_t>(k)];
      ystar += static_cast<double>(c) * h_star[static_cast<std::size_t>(k - 1)];
    }
    auto parts = squarefree_decomposition(characteristic_polynomial(Y));
    std::size_t mu = 0;
    Complex rho = 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (parts[i].degree() <= 0) continue;
      for (Complex r : polynomial_roots(to_float(parts[i])))
        if (std::abs(r - ystar) < best) {
          best = std::abs(r - ystar);
          rho = r;
          mu = i + 1;
        }
    }
    if (mu == 0 || best > 1e-6 * std::max(1.0, std::abs(ystar)))
      throw Error(ErrorCode::EmptyImage, "h_star is not in the spectrum of H~");
    const ExactPoly& factor = parts[mu - 1];
    QMatrix S = matrix_polynomial(factor, Y), Smu = S;
    for (std::size_t i = 1; i < mu; ++i) Smu = Smu * S;
    const QMatrix Z = QMatrix::from_columns(kernel_basis(Smu), g);
    MatrixXcd Gs;  // generalized eigenspace, Sing coordinates
    if (factor.degree() == 1) {
      Gs = to_eigen(to_complex(Z));
    } else {
      // Riesz projector inside the stratum, where the roots of the factor are simple
      const MatrixXcd Yz = to_eigen(to_complex(restrict_to(Y, Z)));
      double gap = std::numeric_limits<double>::infinity();
      for (Complex r : polynomial_roots(to_float(factor)))
        if (std::abs(r - rho) > 1e-9 * std::max(1.0, std::abs(rho))) gap = std::min(gap, std::abs(r - rho));
      const double radius = 0.5 * gap;
      const auto zd = static_cast<Eigen::Index>(Z.cols());
      const MatrixXcd I = MatrixXcd::Identity(zd, zd);
      MatrixXcd P = MatrixXcd::Zero(zd, zd);
      const int nodes = 256;
      for (int m = 0; m < nodes; ++m) {
        const Complex e = std::polar(1.0, 2.0 * std::numbers::pi * (m + 0.5) / nodes);
        P += (radius * e / static_cast<double>(nodes)) * ((rho + radius * e) * I - Yz).partialPivLu().inverse();
      }
      Eigen::JacobiSVD<MatrixXcd> psvd(P, Eigen::ComputeFullU);
      const auto cols = static_cast<Eigen::Index>(mu);
      Gs = to_eigen(to_complex(Z)) * psvd.matrixU().leftCols(cols);
    }
    // every H~_k must have the single eigenvalue h_star_k on the space
    bool separated = true;
    const MatrixXcd pinv = Gs.completeOrthogonalDecomposition().pseudoInverse();
    for (int k = 2; k <= n && separated; ++k) {
      const MatrixXcd Rk = to_eigen(to_complex(R[static_cast<std::size_t>(k)]));
      const Complex mean = (pinv * Rk * Gs).trace() / static_cast<double>(Gs.cols());
      const Complex hk = h_star[static_cast<std::size_t>(k - 1)];
      if (std::abs(mean - hk) > 1e-6 * std::max(1.0, std::abs(hk))) separated = false;
    }
    if (!separated) continue;
    out.generalized_dim = static_cast<std::size_t>(Gs.cols());
    const MatrixXcd shc = to_eigen(to_complex(sh.sh));
    const MatrixXcd G = to_eigen(to_complex(G0)) * Gs;
    const MatrixXcd img = shc * G;
    Eigen::JacobiSVD<MatrixXcd> isvd(img, Eigen::ComputeThinU);
    const auto& isv = isvd.singularValues();
    const double ref = std::max(1.0, shc.norm()) * std::max(1.0, G.norm());
    for (Eigen::Index i = 0; i < isv.size(); ++i)
      if (isv(i) > 1e-8 * ref) ++out.image_rank;
    if (out.image_rank == 0) throw Error(ErrorCode::EmptyImage, "sh annihilates the generalized eigenspace");
    VectorXcd v = isvd.matrixU().col(0);
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    Monodromy<Complex> mono(params);
    auto H = hamiltonians_on_weight(mono, l);
    // polish by inverse iteration with a combination of the H_k on the weight space
    MatrixXcd M = MatrixXcd::Zero(v.size(), v.size());
    for (int k = 2; k <= n; ++k) {
      const double c = static_cast<double>((k - 1) * (attempt + 1) + ((k * 7 + attempt * 3) % 5));
      M += c * (to_eigen(H[static_cast<std::size_t>(k)]) -
                h_star[static_cast<std::size_t>(k - 1)] * MatrixXcd::Identity(v.size(), v.size()));
    }
    const Eigen::PartialPivLU<MatrixXcd> lu(M);
    const VectorXcd v0 = v;
    for (int step = 0; step < 2; ++step) {
      VectorXcd w = lu.solve(v);
      if (!w.allFinite() || w.norm() == 0.0) break;
      v = w / w.norm();
    }
    if (std::abs(v0.dot(v)) < 1.0 - 1e-6) v = v0;
    v.cwiseAbs().maxCoeff(&arg);
    v *= std::conj(v(arg)) / std::abs(v(arg));
    out.line = from_eigen(v);
    for (int k = 1; k <= n; ++k) {
      const MatrixXcd Hk = to_eigen(H[static_cast<std::size_t>(k)]);
      const double r = (Hk * v - h_star[static_cast<std::size_t>(k - 1)] * v).norm() / std::max(1.0, Hk.norm());
      out.residual = std::max(out.residual, r);
    }
    return out;
  }
  throw Error(ErrorCode::EmptyImage, "no combination separates h_star from the other points");
}

}  // namespace xxxlab
