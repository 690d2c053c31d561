#pragma once

// Joint spectrum of the commuting Hamiltonians H_0..H_n on Sing in weight l.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xxxlab/diffop/model.hpp"
#include "xxxlab/exactmath/numeric.hpp"
#include "xxxlab/qsystem/enumerate.hpp"

namespace xxxlab {

struct SpectrumOptions {
  double commutator_tol = 1e-10;  // relative, pairwise
  double leakage_tol = 1e-9;      // relative off-diagonal mass after the basis change
  double dedup_tol = 1e-7;        // max-norm on (h_3..h_n)
  double separation_tol = 1e-6;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct EigenTuple {
  std::vector<Complex> h;  // h_1..h_n
  CVector line;            // unit vector in weight coordinates
};

struct SpectrumReport {
  int n = 0;
  int l = 0;
  std::size_t sing_dim = 0;
  std::vector<EigenTuple> tuples;
  double min_separation = 0.0;  // min max-norm distance between tuples on (h_3..h_n)
  double max_commutator = 0.0;
  double max_leakage = 0.0;
  std::optional<double> xxx_leakage;  // H_XXX in the joint basis
  std::vector<std::pair<std::size_t, std::size_t>> ambiguous;  // tuples closer than dedup_tol
  std::uint64_t seed = 1;
  int reseeds = 0;
  SpectrumOptions options;
};

/// Diagonalizes the family H (H_0..H_n as matrices on Sing coordinates)
/// through a seeded random combination. `basis` maps Sing coordinates to
/// weight coordinates (columns). Throws NotCommuting when a commutator
/// exceeds the tolerance; near-coincident tuples are reported in
/// `ambiguous`, never merged.
SpectrumReport joint_diagonalize(const std::vector<CMatrix>& H, const CMatrix& basis, int n, int l,
                                 const SpectrumOptions& options = {});

/// Builds the chain, restricts H_k to Sing in weight l and diagonalizes.
SpectrumReport chain_spectrum(const ModelParams& params, const SpectrumOptions& options = {});

struct SimpleSpectrumCertificate {
  bool simple = false;
  std::size_t distinct = 0;
  std::size_t dim = 0;
  double min_separation = 0.0;
  double tol = 0.0;
};
SimpleSpectrumCertificate simple_spectrum_certificate(const SpectrumReport& report, double tol = 1e-6);

struct UniquenessCheck {
  bool unique = false;
  std::vector<double> null_gaps;  // per tuple: second smallest / largest singular value of stacked H_k - h_k
  // per pair (i, j), i < j: smallest k (1-based, as in H_k) whose eigenvalues differ
  std::vector<std::tuple<std::size_t, std::size_t, int>> separating;
};
/// Each eigenline is one-dimensional and any two are told apart by some H_k.
/// `H` and `basis` as given to joint_diagonalize.
UniquenessCheck eigenbasis_uniqueness_check(const SpectrumReport& report, const std::vector<CMatrix>& H,
                                            const CMatrix& basis);

struct MatchEntry {
  std::size_t pair = 0;
  std::size_t tuple = 0;
  double distance = 0.0;  // max-norm on h
};
struct MatchTable {
  std::vector<MatchEntry> matches;
  std::vector<std::size_t> unmatched_pairs;
  std::vector<std::size_t> unmatched_tuples;
  std::vector<bool> tuple_has_pair;  // kernel_poly at degrees l and l~ succeeds at the tuple's h
  std::vector<bool> involutive;      // tuple -> pair -> tuple returns the tuple
  double tol = 0.0;
  bool perfect() const;
};

/// Matches pairs to tuples in both directions. With strict set, throws
/// UnmatchedPair / UnmatchedTuple instead of returning an imperfect table.
MatchTable match_pairs_spectrum(const SolveReport& pairs, const SpectrumReport& spectrum, const ModelParams& params,
                                double tol = 1e-8, bool strict = true);

/// Seeds for eigen_seeded enumeration.
std::vector<std::vector<Complex>> spectrum_seeds(const SpectrumReport& report);

/// Sing-coordinate Hamiltonians and the orthonormal basis used by chain_spectrum.
struct SingFamily {
  std::vector<CMatrix> H;  // H_0..H_n
  CMatrix basis;           // weight coordinates, orthonormal columns
  CMatrix xxx;             // H_XXX restricted, empty when n < 2
};
SingFamily sing_family(const ModelParams& params);

}  // namespace xxxlab
