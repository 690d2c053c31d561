#include "xxxlab/cli/jobs.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "xxxlab/qsystem/enumerate.hpp"
#include "xxxlab/sovrep/sov.hpp"
#include "xxxlab/spectra/exact_algebra.hpp"
#include "xxxlab/spectra/spectrum.hpp"
#include "xxxlab/spinchain/monodromy.hpp"

#ifndef XXXLAB_VERSION
#define XXXLAB_VERSION "0.0.0"
#endif

namespace xxxlab::cli {

using nlohmann::json;

const char* version() { return XXXLAB_VERSION; }

const char* to_string(Mode m) {
  switch (m) {
    case Mode::exact: return "exact";
    case Mode::numeric: return "numeric";
    case Mode::automatic: return "auto";
  }
  return "auto";
}

Mode parse_mode(const std::string& s) {
  if (s == "exact") return Mode::exact;
  if (s == "numeric") return Mode::numeric;
  if (s == "auto") return Mode::automatic;
  throw UsageError("unknown mode '" + s + "' (exact, numeric, auto)");
}

std::vector<Rational> parse_z_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(parse_rational(item));
    } catch (const std::exception&) {
      throw UsageError("bad rational '" + item + "' in --z");
    }
  }
  return out;
}

ModelParams validate(const JobConfig& c) {
  if (c.command != "pairs" && c.command != "spectrum" && c.command != "match" && c.command != "sov-check")
    throw UsageError("unknown command '" + c.command + "'");
  if (c.n < 1) throw UsageError("--n must be at least 1");
  if (c.l < 0) throw UsageError("--l must be nonnegative");
  if (c.n > kMaxN) throw UsageError("n = " + std::to_string(c.n) + " exceeds the cap " + std::to_string(kMaxN));
  if (c.command == "sov-check" && c.n > kMaxSovN)
    throw UsageError("n = " + std::to_string(c.n) + " exceeds the sov-check cap " + std::to_string(kMaxSovN));
  if (c.command == "sov-check" && c.n < 2) throw UsageError("sov-check needs n >= 2");
  if (2 * c.l > c.n) throw UsageError("2l > n: no singular vectors in this weight");
  if (!c.z.empty() && static_cast<int>(c.z.size()) != c.n)
    throw UsageError("--z needs n = " + std::to_string(c.n) + " values");
  if (c.threads < 1) throw UsageError("--threads must be at least 1");
  if (c.method != "auto") {
    SolveMethod m;
    try {
      m = parse_solve_method(c.method);
    } catch (const Error&) {
      throw UsageError("unknown method '" + c.method + "'");
    }
    if (m == SolveMethod::exact_elimination && c.n > 4) throw UsageError("exact_elimination needs n <= 4");
  }
  std::vector<Rational> z = c.z.empty() ? std::vector<Rational>(static_cast<std::size_t>(c.n), Rational(0)) : c.z;
  try {
    return ModelParams::make(c.n, c.l, z);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

std::optional<std::string> output_path(const JobConfig& c, const char* out_dir) {
  if (c.out) return c.out;
  if (out_dir == nullptr || *out_dir == '\0') return std::nullopt;
  std::string dir(out_dir);
  if (dir.back() != '/') dir += '/';
  return dir + c.command + "-n" + std::to_string(c.n) + "-l" + std::to_string(c.l) + ".json";
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

json to_json(const Rational& q) { return xxxlab::to_string(q); }
json to_json(Complex x) { return json::array({x.real(), x.imag()}); }

json to_json(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}
json to_json(const std::vector<Complex>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}
json to_json(const ExactPoly& p) { return to_json(p.coeffs()); }
json to_json(const FloatPoly& p) { return to_json(p.coeffs()); }

// JSON has no infinity
json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json config_json(const JobConfig& c, const ModelParams& p) {
  return {{"command", c.command},       {"n", c.n},
          {"l", c.l},                   {"z", to_json(p.z)},
          {"m", to_json(p.m)},          {"mode", to_string(c.mode)},
          {"method", c.method},         {"seed", c.seed},       {"budget", c.budget},
          {"threads", c.threads},       {"out", c.out ? json(*c.out) : json(nullptr)}};
}

json tolerances_json(const Tolerances& t) {
  return {{"newton", t.newton},         {"dedup", t.dedup},
          {"commutator", t.commutator}, {"leakage", t.leakage}, {"separation", t.separation},
          {"match", t.match},           {"sov", t.sov}};
}

json pair_json(const WronskiPair& p) {
  json j;
  j["exact"] = p.exact;
  if (p.exact) {
    j["f"] = to_json(p.f);
    j["g"] = to_json(p.g);
    j["h"] = to_json(p.h);
  } else {
    j["f"] = to_json(p.f_num);
    j["g"] = to_json(p.g_num);
    j["h"] = to_json(p.h_num);
  }
  j["roots"] = to_json(p.roots.t);
  j["root_class"] = xxxlab::to_string(p.roots.classification);
  const auto& c = p.certificate;
  j["certificate"] = {{"status", xxxlab::to_string(c.status)},
                      {"wronskian_residual", c.wronskian_residual},
                      {"f_residual", c.f_residual},
                      {"g_residual", c.g_residual},
                      {"normalized", c.normalized}};
  return j;
}

SolveMethod pick_method(const JobConfig& c) {
  if (c.method != "auto") return parse_solve_method(c.method);
  if (c.mode == Mode::exact && c.n <= 4) return SolveMethod::exact_elimination;
  return SolveMethod::eigen_seeded;
}

SolveOptions solve_options(const JobConfig& c) {
  SolveOptions o;
  o.seed = c.seed;
  o.newton_tol = c.tol.newton;
  o.dedup_tol = c.tol.dedup;
  o.threads = c.threads;
  o.iteration_budget = c.budget;
  if (c.mode == Mode::numeric) o.reconstruct_bound = 0;
  return o;
}

SpectrumOptions spectrum_options(const JobConfig& c) {
  SpectrumOptions o;
  o.commutator_tol = c.tol.commutator;
  o.leakage_tol = c.tol.leakage;
  o.dedup_tol = c.tol.dedup;
  o.separation_tol = c.tol.separation;
  o.seed = c.seed;
  o.threads = c.threads;
  return o;
}

// Enumerates pairs; eigen_seeded takes its seeds from the joint spectrum.
SolveReport solve(const JobConfig& c, const ModelParams& p, const SpectrumReport* spectrum) {
  SolveOptions o = solve_options(c);
  const SolveMethod m = pick_method(c);
  if (m == SolveMethod::eigen_seeded)
    o.seeds = spectrum_seeds(spectrum ? *spectrum : chain_spectrum(p, spectrum_options(c)));
  return enumerate_pairs(p, m, o);
}

json solve_json(const SolveReport& r) {
  json pairs = json::array();
  for (const auto& p : r.pairs) pairs.push_back(pair_json(p));
  return {{"method", xxxlab::to_string(r.method)},
          {"expected", r.expected},
          {"found", r.found()},
          {"min_separation", finite_or_null(r.min_separation)},
          {"budget_exceeded", r.budget_exceeded},
          {"stats",
           {{"starts", r.stats.starts},
            {"newton_iterations", r.stats.newton_iterations},
            {"converged", r.stats.converged},
            {"dedup_merges", r.stats.dedup_merges}}},
          {"notes", r.notes},
          {"pairs", pairs}};
}

json spectrum_json(const SpectrumReport& r) {
  json tuples = json::array();
  for (const auto& t : r.tuples) tuples.push_back({{"h", to_json(t.h)}, {"line", to_json(t.line)}});
  json amb = json::array();
  for (auto [i, j] : r.ambiguous) amb.push_back({i, j});
  return {{"sing_dim", r.sing_dim},
          {"min_separation", finite_or_null(r.min_separation)},
          {"max_commutator", r.max_commutator},
          {"max_leakage", r.max_leakage},
          {"xxx_leakage", r.xxx_leakage ? json(*r.xxx_leakage) : json(nullptr)},
          {"ambiguous", amb},
          {"seed", r.seed},
          {"reseeds", r.reseeds},
          {"tuples", tuples}};
}

// Problems found while solving: the count, failed certificates, separation.
std::vector<std::string> pair_failures(const SolveReport& r, const Tolerances& tol) {
  std::vector<std::string> out;
  if (r.expected >= 0 && static_cast<long long>(r.found()) != r.expected)
    out.push_back("found " + std::to_string(r.found()) + " pairs, expected " + std::to_string(r.expected));
  for (std::size_t i = 0; i < r.pairs.size(); ++i)
    if (r.pairs[i].certificate.status == CertStatus::failed)
      out.push_back("pair " + std::to_string(i) + " failed verification");
  if (r.found() > 1 && !(r.min_separation > tol.separation)) out.push_back("pairs are not separated");
  return out;
}

struct Stage {
  json& timings;
  const char* name;
  Clock::time_point t0 = Clock::now();
  ~Stage() { timings[name] = ms_since(t0); }
};

void run_pairs(const JobConfig& c, const ModelParams& p, JobResult& res, json& timings) {
  SolveReport r;
  {
    Stage s{timings, "enumerate"};
    r = solve(c, p, nullptr);
  }
  res.report["result"] = solve_json(r);
  auto failures = pair_failures(r, c.tol);
  res.report["failures"] = failures;
  res.exit_code = failures.empty() ? kExitOk : kExitMath;
  std::size_t exact = 0;
  for (const auto& q : r.pairs) exact += q.certificate.status == CertStatus::exact;
  res.summary = "pairs n=" + std::to_string(c.n) + " l=" + std::to_string(c.l) + ": " + std::to_string(r.found()) +
                " found (" + std::to_string(exact) + " exact), expected " + std::to_string(r.expected);
}

void run_spectrum(const JobConfig& c, const ModelParams& p, JobResult& res, json& timings) {
  SingFamily fam;
  {
    Stage s{timings, "family"};
    fam = sing_family(p);
  }
  SpectrumReport r;
  {
    Stage s{timings, "diagonalize"};
    r = joint_diagonalize(fam.H, fam.basis, p.n, p.l, spectrum_options(c));
  }
  SimpleSpectrumCertificate cert;
  UniquenessCheck uq;
  {
    Stage s{timings, "certify"};
    cert = simple_spectrum_certificate(r, c.tol.separation);
    uq = eigenbasis_uniqueness_check(r, fam.H, fam.basis);
  }
  json result = spectrum_json(r);
  result["certificate"] = {{"simple", cert.simple},
                           {"distinct", cert.distinct},
                           {"dim", cert.dim},
                           {"min_separation", finite_or_null(cert.min_separation)},
                           {"tol", cert.tol}};
  json sep = json::array();
  for (auto [i, j, k] : uq.separating) sep.push_back({i, j, k});
  result["uniqueness"] = {{"unique", uq.unique}, {"null_gaps", uq.null_gaps}, {"separating", sep}};
  res.report["result"] = result;
  std::vector<std::string> failures;
  if (!cert.simple) failures.push_back("spectrum is not simple");
  if (!uq.unique) failures.push_back("eigenbasis is not unique");
  res.report["failures"] = failures;
  res.exit_code = failures.empty() ? kExitOk : kExitMath;
  res.summary = "spectrum n=" + std::to_string(c.n) + " l=" + std::to_string(c.l) + ": " +
                std::to_string(r.tuples.size()) + " tuples, simple " + (cert.simple ? "true" : "false");
}

double overlap(const CVector& a, const CVector& b) {
  Complex s = 0.0;
  double na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += std::conj(a[i]) * b[i];
    na += std::norm(a[i]);
    nb += std::norm(b[i]);
  }
  return na > 0.0 && nb > 0.0 ? std::abs(s) / std::sqrt(na * nb) : 0.0;
}

void run_match(const JobConfig& c, const ModelParams& p, JobResult& res, json& timings) {
  SpectrumReport spec;
  {
    Stage s{timings, "spectrum"};
    spec = chain_spectrum(p, spectrum_options(c));
  }
  SolveReport pairs;
  {
    Stage s{timings, "enumerate"};
    pairs = solve(c, p, &spec);
  }
  MatchTable table;
  {
    Stage s{timings, "match"};
    table = match_pairs_spectrum(pairs, spec, p, c.tol.match, false);
  }
  std::vector<std::string> failures = pair_failures(pairs, c.tol);
  for (auto i : table.unmatched_pairs) failures.push_back("pair " + std::to_string(i) + " has no tuple");
  for (auto i : table.unmatched_tuples) failures.push_back("tuple " + std::to_string(i) + " has no pair");
  for (std::size_t t = 0; t < table.tuple_has_pair.size(); ++t)
    if (!table.tuple_has_pair[t]) failures.push_back("no pair at the h of tuple " + std::to_string(t));

  // eigenvectors: Bethe vectors for admissible roots, SoV extraction otherwise
  Stage s{timings, "eigenvectors"};
  std::optional<SoVModel> sov;
  std::optional<ShMap> sh;
  Monodromy<Complex> mono(p);
  json matches = json::array();
  for (const auto& m : table.matches) {
    const WronskiPair& pr = pairs.pairs[m.pair];
    const EigenTuple& tu = spec.tuples[m.tuple];
    json e = {{"pair", m.pair}, {"tuple", m.tuple}, {"distance", m.distance}};
    if (pr.roots.classification == RootClass::admissible) {
      auto full = bethe_vector<Complex>(mono, pr.roots.t);
      auto w = restrict_weight<Complex>(p.n, p.l, full);
      double norm = 0.0;
      for (auto x : w) norm += std::norm(x);
      e["eigenvector"] = {{"source", "bethe"}, {"norm", std::sqrt(norm)}, {"overlap", overlap(w, tu.line)}};
    } else if (p.n <= kMaxSovN) {
      try {
        if (!sov) {
          sov = sov_model(p, p.l);
          sh = sh_map(p, sov->ops.basis);
        }
        auto x = extract_eigenvector(pr.h_num, p, *sov, *sh);
        const double ov = overlap(x.line, tu.line);
        e["eigenvector"] = {{"source", "extracted"},
                            {"generalized_dim", x.generalized_dim},
                            {"image_rank", x.image_rank},
                            {"residual", x.residual},
                            {"overlap", ov},
                            {"line", to_json(x.line)}};
        if (x.residual > c.tol.sov) failures.push_back("extracted line for pair " + std::to_string(m.pair) + " is not an eigenline");
      } catch (const Error& err) {
        e["eigenvector"] = {{"source", "extracted"}, {"error", err.what()}};
        failures.push_back("extraction failed for pair " + std::to_string(m.pair));
      }
    } else {
      e["eigenvector"] = {{"source", "skipped"}, {"reason", "n exceeds the SoV cap"}};
    }
    matches.push_back(e);
  }
  res.report["result"] = {{"pairs", solve_json(pairs)},
                          {"spectrum", spectrum_json(spec)},
                          {"matches", matches},
                          {"unmatched_pairs", table.unmatched_pairs},
                          {"unmatched_tuples", table.unmatched_tuples},
                          {"tuple_has_pair", table.tuple_has_pair},
                          {"involutive", table.involutive},
                          {"perfect", table.perfect()}};
  res.report["failures"] = failures;
  res.exit_code = failures.empty() ? kExitOk : kExitMath;
  res.summary = "match n=" + std::to_string(c.n) + " l=" + std::to_string(c.l) + ": " +
                std::to_string(table.matches.size()) + " matched, perfect " + (table.perfect() ? "true" : "false");
}

void run_sov_check(const JobConfig& c, const ModelParams& p, JobResult& res, json& timings) {
  std::vector<std::string> failures;
  json result;
  SoVModel model;
  {
    Stage s{timings, "sklyanin"};
    model = sov_model(p, p.l);
  }
  result["dim"] = model.ops.basis.dim();
  result["poles_cancel"] = model.ops.poles_cancel;
  result["interpolation_resamples"] = model.ops.resamples;
  if (!model.ops.poles_cancel) failures.push_back("Sklyanin interpolation leaves poles");
  const QMatrix G = sov_singular_basis(model.e21e12);
  result["sing_dim"] = G.cols();

  SolveReport pairs;
  {
    Stage s{timings, "enumerate"};
    pairs = solve(c, p, nullptr);
  }
  for (auto& f : pair_failures(pairs, c.tol)) failures.push_back(f);
  const bool rational = c.mode != Mode::numeric;
  {
    Stage s{timings, "eigencheck"};
    json checks = json::array();
    for (std::size_t i = 0; i < pairs.pairs.size(); ++i) {
      auto e = weight_fn_eigencheck(pairs.pairs[i], p, model, c.tol.sov);
      checks.push_back({{"pair", i},
                        {"h", pair_json(pairs.pairs[i])["h"]},
                        {"exact", e.exact},
                        {"all_zero", e.all_zero},
                        {"omega_nonzero", e.omega_nonzero},
                        {"h_residuals", e.h_residuals},
                        {"singular_residual", e.singular_residual}});
      if (!e.all_zero || !e.omega_nonzero) failures.push_back("eigencheck failed for pair " + std::to_string(i));
    }
    result["eigenchecks"] = checks;
  }
  if (rational && p.l >= 1) {
    // every point at once, irrational ones included
    Stage s{timings, "algebra"};
    try {
      auto alg = exact_spectral_algebra(p);
      auto e = weight_fn_eigencheck(alg.h, p, model);
      result["algebra"] = {{"degree", alg.roots.size()}, {"all_zero", e.all_zero}, {"omega_nonzero", e.omega_nonzero}};
      if (!e.all_zero || !e.omega_nonzero) failures.push_back("symbolic eigencheck failed");
    } catch (const Error& err) {
      result["algebra"] = {{"error", err.what()}};
      failures.push_back("spectral algebra unavailable");
    }
  }
  {
    Stage s{timings, "sh"};
    auto sh = sh_map(p, model.ops.basis);
    auto transport = operator_transport(sh, model.transfer, p);
    result["sh"] = {{"samples", sh.samples},
                    {"surplus", sh.surplus},
                    {"consistent", sh.consistent},
                    {"resamples", sh.resamples},
                    {"transport", transport}};
    if (!sh.consistent) failures.push_back("sh kernel-consistency check failed");
    for (std::size_t k = 0; k < transport.size(); ++k)
      if (!transport[k]) failures.push_back("sh does not intertwine H_" + std::to_string(k));
  }
  res.report["result"] = result;
  res.report["failures"] = failures;
  res.exit_code = failures.empty() ? kExitOk : kExitMath;
  res.summary = "sov-check n=" + std::to_string(c.n) + " l=" + std::to_string(c.l) + ": " +
                (failures.empty() ? "pass" : "FAIL (" + std::to_string(failures.size()) + " problems)");
}

bool is_solver_failure(ErrorCode code) {
  return code == ErrorCode::SolverBudgetExceeded || code == ErrorCode::RankDeficientSampling ||
         code == ErrorCode::InterpolationDegeneracy;
}

}  // namespace

JobResult run_job(const JobConfig& c) {
  const ModelParams p = validate(c);
  JobResult res;
  json timings = json::object();
  const auto t0 = Clock::now();
  res.report["version"] = version();
  res.report["config"] = config_json(c, p);
  res.report["tolerances"] = tolerances_json(c.tol);
  try {
    if (c.command == "pairs") run_pairs(c, p, res, timings);
    else if (c.command == "spectrum") run_spectrum(c, p, res, timings);
    else if (c.command == "match") run_match(c, p, res, timings);
    else run_sov_check(c, p, res, timings);
  } catch (const BudgetExceeded& e) {
    res.report["result"] = solve_json(e.partial());
    res.report["error"] = {{"code", error_name(e.code())}, {"message", e.what()}};
    res.exit_code = kExitSolver;
    res.summary = c.command + ": " + e.what();
  } catch (const Error& e) {
    res.report["error"] = {{"code", error_name(e.code())}, {"message", e.what()}};
    res.exit_code = is_solver_failure(e.code()) ? kExitSolver : kExitMath;
    res.summary = c.command + ": " + e.what();
  }
  res.report["exit_code"] = res.exit_code;
  if (c.timings) {
    timings["total"] = ms_since(t0);
    res.report["timings_ms"] = timings;
  }
  return res;
}

}  // namespace xxxlab::cli
