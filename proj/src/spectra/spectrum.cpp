#include "xxxlab/spectra/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "xxxlab/qsystem/pairs.hpp"
#include "xxxlab/spinchain/monodromy.hpp"
#include "xxxlab/spinchain/singular.hpp"
#include "xxxlab/spinchain/spin_space.hpp"

namespace xxxlab {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

double tuple_distance(const std::vector<Complex>& a, const std::vector<Complex>& b, std::size_t from) {
  double d = 0.0;
  for (std::size_t k = from; k < a.size() && k < b.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

// Rotates v so that its largest entry is real and positive.
void fix_phase(VectorXcd& v) {
  Eigen::Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  if (std::abs(v(arg)) > 0) v *= std::conj(v(arg)) / std::abs(v(arg));
}

MatrixXcd restrict_to(const MatrixXcd& Q, const MatrixXcd& M) { return Q.adjoint() * M * Q; }

}  // namespace

SingFamily sing_family(const ModelParams& params) {
  params.require_spin_chain();
  if (2 * params.l > params.n) throw Error(ErrorCode::PreconditionViolated, "spectrum needs 2l <= n");
  SingFamily fam;
  fam.basis = weight_singular_basis(params, params.l).basis;
  const MatrixXcd Q = to_eigen(fam.basis);
  Monodromy<Complex> mono(params);
  for (const auto& Hk : hamiltonians_on_weight(mono, params.l)) fam.H.push_back(from_eigen(restrict_to(Q, to_eigen(Hk))));
  if (params.n >= 2 && params.is_homogeneous()) {
    const int n = params.n;
    auto idx = weight_indices(n, params.l);
    auto pos = weight_positions(n, params.l);
    CMatrix X(idx.size(), idx.size());
    std::vector<Complex> e(spin_dim(n), Complex(0));
    for (std::size_t j = 0; j < idx.size(); ++j) {
      e[idx[j]] = 1.0;
      auto col = apply_xxx<Complex>(n, e);
      e[idx[j]] = 0.0;
      for (std::size_t t = 0; t < col.size(); ++t)
        if (col[t] != Complex(0)) X(pos[t], j) = col[t];
    }
    fam.xxx = from_eigen(restrict_to(Q, to_eigen(X)));
  }
  return fam;
}

SpectrumReport joint_diagonalize(const std::vector<CMatrix>& H, const CMatrix& basis, int n, int l,
                                 const SpectrumOptions& options) {
  if (H.size() != static_cast<std::size_t>(n + 1)) throw Error(ErrorCode::InvalidArgument, "expected H_0..H_n");
  SpectrumReport rep;
  rep.n = n;
  rep.l = l;
  rep.options = options;
  rep.seed = options.seed;
  const std::size_t d = basis.cols();
  rep.sing_dim = d;
  std::vector<MatrixXcd> M;
  std::vector<double> norms;
  for (const auto& h : H) {
    M.push_back(to_eigen(h));
    norms.push_back(std::max(1.0, M.back().norm()));
  }
  for (std::size_t i = 0; i < M.size(); ++i)
    for (std::size_t j = i + 1; j < M.size(); ++j) {
      const double c = (M[i] * M[j] - M[j] * M[i]).norm() / (norms[i] * norms[j]);
      rep.max_commutator = std::max(rep.max_commutator, c);
    }
  if (rep.max_commutator > options.commutator_tol)
    throw Error(ErrorCode::NotCommuting, "Hamiltonians do not commute: " + std::to_string(rep.max_commutator));
  if (d == 0) {
    rep.min_separation = std::numeric_limits<double>::infinity();
    return rep;
  }

  const MatrixXcd Q = to_eigen(basis);
  MatrixXcd V;
  VectorXcd lambda;
  std::mt19937_64 rng(options.seed);
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    MatrixXcd X = MatrixXcd::Zero(d, d);
    for (std::size_t k = 2; k < M.size(); ++k) X += unif(rng) * M[k] / norms[k];
    Eigen::ComplexEigenSolver<MatrixXcd> es(X);
    V = es.eigenvectors();
    lambda = es.eigenvalues();
    double gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < lambda.size(); ++i)
      for (Eigen::Index j = i + 1; j < lambda.size(); ++j) gap = std::min(gap, std::abs(lambda(i) - lambda(j)));
    if (gap > 1e-8 || d == 1) break;
    ++rep.reseeds;
  }
  for (Eigen::Index j = 0; j < V.cols(); ++j) V.col(j).normalize();
  const MatrixXcd Vinv = V.inverse();

  std::vector<EigenTuple> tuples(d);
  for (std::size_t j = 0; j < d; ++j) tuples[j].h.assign(static_cast<std::size_t>(n), Complex(0));
  for (std::size_t k = 1; k < M.size(); ++k) {
    const MatrixXcd D = Vinv * M[k] * V;
    MatrixXcd off = D;
    off.diagonal().setZero();
    rep.max_leakage = std::max(rep.max_leakage, off.cwiseAbs().maxCoeff() / norms[k]);
    for (std::size_t j = 0; j < d; ++j) tuples[j].h[k - 1] = D(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j));
  }
  for (std::size_t j = 0; j < d; ++j) {
    VectorXcd w = Q * V.col(static_cast<Eigen::Index>(j));
    w.normalize();
    fix_phase(w);
    tuples[j].line = from_eigen(w);
  }
  std::sort(tuples.begin(), tuples.end(), [](const EigenTuple& a, const EigenTuple& b) {
    for (std::size_t k = 0; k < a.h.size(); ++k) {
      if (std::abs(a.h[k].real() - b.h[k].real()) > 1e-9) return a.h[k].real() < b.h[k].real();
      if (std::abs(a.h[k].imag() - b.h[k].imag()) > 1e-9) return a.h[k].imag() < b.h[k].imag();
    }
    return false;
  });
  rep.tuples = std::move(tuples);
  rep.min_separation = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      const double s = tuple_distance(rep.tuples[i].h, rep.tuples[j].h, 2);
      rep.min_separation = std::min(rep.min_separation, s);
      if (s <= options.dedup_tol) rep.ambiguous.emplace_back(i, j);
    }
  if (rep.max_leakage > options.leakage_tol)
    throw Error(ErrorCode::NotCommuting, "joint basis leaves off-diagonal mass " + std::to_string(rep.max_leakage));
  return rep;
}

SpectrumReport chain_spectrum(const ModelParams& params, const SpectrumOptions& options) {
  auto fam = sing_family(params);
  auto rep = joint_diagonalize(fam.H, fam.basis, params.n, params.l, options);
  if (fam.xxx.rows() > 0 && !rep.tuples.empty()) {
    const MatrixXcd Q = to_eigen(fam.basis);
    const MatrixXcd X = to_eigen(fam.xxx);
    MatrixXcd V(Q.cols(), static_cast<Eigen::Index>(rep.tuples.size()));
    for (std::size_t j = 0; j < rep.tuples.size(); ++j) V.col(static_cast<Eigen::Index>(j)) = Q.adjoint() * to_eigen(rep.tuples[j].line);
    MatrixXcd D = V.inverse() * X * V;
    D.diagonal().setZero();
    rep.xxx_leakage = D.cwiseAbs().maxCoeff() / std::max(1.0, X.norm());
  }
  return rep;
}

SimpleSpectrumCertificate simple_spectrum_certificate(const SpectrumReport& report, double tol) {
  SimpleSpectrumCertificate c;
  c.dim = report.sing_dim;
  c.tol = tol;
  c.min_separation = report.min_separation;
  // Greedy count of tuples at mutual distance > tol.
  std::vector<const EigenTuple*> reps;
  for (const auto& t : report.tuples) {
    bool dup = false;
    for (const auto* r : reps)
      if (tuple_distance(t.h, r->h, 2) <= tol) dup = true;
    if (!dup) reps.push_back(&t);
  }
  c.distinct = reps.size();
  c.simple = c.distinct == c.dim && (c.dim <= 1 || report.min_separation > tol);
  return c;
}

UniquenessCheck eigenbasis_uniqueness_check(const SpectrumReport& report, const std::vector<CMatrix>& H,
                                            const CMatrix& basis) {
  UniquenessCheck out;
  const auto d = static_cast<Eigen::Index>(basis.cols());
  const double tol = report.options.separation_tol;
  out.unique = static_cast<std::size_t>(d) == report.tuples.size();
  if (d == 0) return out;
  std::vector<MatrixXcd> M;
  for (const auto& h : H) M.push_back(to_eigen(h));
  const std::size_t K = M.size() > 2 ? M.size() - 2 : 0;
  for (const auto& t : report.tuples) {
    if (K == 0) {
      out.null_gaps.push_back(d == 1 ? 1.0 : 0.0);
      if (d != 1) out.unique = false;
      continue;
    }
    MatrixXcd S(static_cast<Eigen::Index>(K) * d, d);
    for (std::size_t k = 2; k < M.size(); ++k)
      S.middleRows(static_cast<Eigen::Index>(k - 2) * d, d) =
          M[k] - t.h[k - 1] * MatrixXcd::Identity(d, d);
    Eigen::JacobiSVD<MatrixXcd> svd(S);
    const auto& sv = svd.singularValues();
    const double top = std::max(1.0, sv(0));
    const double smallest = sv(d - 1) / top;
    const double second = d >= 2 ? sv(d - 2) / top : 1.0;
    out.null_gaps.push_back(second);
    if (smallest > 1e-8 || second <= tol) out.unique = false;
  }
  for (std::size_t i = 0; i < report.tuples.size(); ++i)
    for (std::size_t j = i + 1; j < report.tuples.size(); ++j) {
      int sep = 0;
      for (std::size_t k = 2; k < report.tuples[i].h.size() && sep == 0; ++k)
        if (std::abs(report.tuples[i].h[k] - report.tuples[j].h[k]) > tol) sep = static_cast<int>(k + 1);
      out.separating.emplace_back(i, j, sep);
      if (sep == 0) out.unique = false;
    }
  return out;
}

bool MatchTable::perfect() const {
  if (!unmatched_pairs.empty() || !unmatched_tuples.empty()) return false;
  for (bool b : tuple_has_pair)
    if (!b) return false;
  for (bool b : involutive)
    if (!b) return false;
  return true;
}

MatchTable match_pairs_spectrum(const SolveReport& pairs, const SpectrumReport& spectrum, const ModelParams& params,
                                double tol, bool strict) {
  if (spectrum.n != params.n || spectrum.l != params.l)
    throw Error(ErrorCode::InvalidArgument, "pairs and spectrum are for different chains");
  MatchTable t;
  t.tol = tol;
  const auto& T = spectrum.tuples;
  auto nearest = [&](const std::vector<Complex>& h) {
    std::size_t best = T.size();
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < T.size(); ++j) {
      const double dd = tuple_distance(h, T[j].h, 0);
      if (dd < bd) {
        bd = dd;
        best = j;
      }
    }
    return std::make_pair(best, bd);
  };
  // pair -> tuple
  std::vector<int> claimed(T.size(), -1);
  for (std::size_t i = 0; i < pairs.pairs.size(); ++i) {
    auto [j, dist] = nearest(pairs.pairs[i].h_num);
    if (j < T.size() && dist < tol && claimed[j] < 0) {
      claimed[j] = static_cast<int>(i);
      t.matches.push_back({i, j, dist});
    } else {
      t.unmatched_pairs.push_back(i);
    }
  }
  for (std::size_t j = 0; j < T.size(); ++j)
    if (claimed[j] < 0) t.unmatched_tuples.push_back(j);
  // tuple -> pair, independently
  t.tuple_has_pair.assign(T.size(), false);
  t.involutive.assign(T.size(), false);
  for (std::size_t j = 0; j < T.size(); ++j) {
    try {
      auto p = pair_from_h(T[j].h, params);
      t.tuple_has_pair[j] = p.certificate.status != CertStatus::failed;
      auto [back, dist] = nearest(p.h_num);
      t.involutive[j] = back == j && dist < tol;
    } catch (const Error&) {
    }
  }
  if (strict) {
    if (!t.unmatched_pairs.empty())
      throw Error(ErrorCode::UnmatchedPair, std::to_string(t.unmatched_pairs.size()) + " pair(s) without a tuple");
    bool tuples_ok = t.unmatched_tuples.empty();
    for (bool b : t.tuple_has_pair) tuples_ok = tuples_ok && b;
    if (!tuples_ok) throw Error(ErrorCode::UnmatchedTuple, "some tuple has no pair");
  }
  return t;
}

std::vector<std::vector<Complex>> spectrum_seeds(const SpectrumReport& report) {
  std::vector<std::vector<Complex>> s;
  for (const auto& t : report.tuples) s.push_back(t.h);
  return s;
}

}  // namespace xxxlab
