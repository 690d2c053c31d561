#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "xxxlab/cli/jobs.hpp"

using namespace xxxlab::cli;

int main(int argc, char** argv) {
  CLI::App app{"Wronskian pairs, joint spectra and separated variables for the XXX chain"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);

  JobConfig cfg;
  std::string z_text, mode_text = "auto", out_text;
  bool no_timings = false;

  for (const char* name : {"pairs", "spectrum", "match", "sov-check"}) {
    const char* help = std::string(name) == "pairs"      ? "enumerate and certify Wronskian pairs"
                       : std::string(name) == "spectrum" ? "joint spectrum of the Hamiltonians on singular vectors"
                       : std::string(name) == "match"    ? "pairs, spectrum, bijection and eigenvectors"
                                                         : "separated-variables identities (n <= 6)";
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--n", cfg.n, "number of sites (<= 12)")->required();
    sub->add_option("--l", cfg.l, "number of flipped spins, 2l <= n")->required();
    sub->add_option("--z", z_text, "comma-separated rational evaluation points (default all 0)");
    sub->add_option("--mode", mode_text, "exact, numeric or auto")->check(CLI::IsMember({"exact", "numeric", "auto"}));
    sub->add_option("--method", cfg.method, "auto, eigen_seeded, newton_multistart or exact_elimination");
    sub->add_option("--seed", cfg.seed, "RNG seed");
    sub->add_option("--budget", cfg.budget, "total Newton iterations (0: unlimited)");
    sub->add_option("--threads", cfg.threads, "worker cap")->check(CLI::PositiveNumber);
    sub->add_option("--out", out_text, "report path (default: $XXXLAB_OUT_DIR or stdout)");
    sub->add_flag("--no-timings", no_timings, "omit wall-clock timings from the report");
    sub->add_option("--tol-newton", cfg.tol.newton, "relative Newton residual");
    sub->add_option("--tol-dedup", cfg.tol.dedup, "max-norm distance for merging points");
    sub->add_option("--tol-commutator", cfg.tol.commutator, "relative commutator bound");
    sub->add_option("--tol-leakage", cfg.tol.leakage, "off-diagonal leakage bound");
    sub->add_option("--tol-separation", cfg.tol.separation, "minimum separation of points");
    sub->add_option("--tol-match", cfg.tol.match, "h distance for a match");
    sub->add_option("--tol-sov", cfg.tol.sov, "numeric SoV residuals");
    sub->callback([&cfg, name] { cfg.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    cfg.mode = parse_mode(mode_text);
    if (!z_text.empty()) cfg.z = parse_z_list(z_text);
    if (!out_text.empty()) cfg.out = out_text;
    cfg.timings = !no_timings;
    JobResult res = run_job(cfg);
    const std::string text = res.report.dump(2) + "\n";
    if (auto path = output_path(cfg, std::getenv("XXXLAB_OUT_DIR"))) {
      std::ofstream f(*path);
      if (!f) {
        std::cerr << "cannot write " << *path << "\n";
        return kExitSolver;
      }
      f << text;
      std::cout << res.summary << "\n" << "report: " << *path << "\n";
    } else {
      std::cout << text;
      std::cerr << res.summary << "\n";
    }
    return res.exit_code;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
}
