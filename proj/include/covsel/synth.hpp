#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "covsel/solve.hpp"
#include "covsel/sym_matrix.hpp"

namespace covsel {

struct GroundTruth {
  SymMatrix a;  // sparse precision matrix
  std::vector<std::pair<std::size_t, std::size_t>> support;  // Aᵢⱼ ≠ 0, i ≠ j, both orders
  double sigma_noise = 0.0;
  std::uint64_t seed = 0;

  bool in_support(std::size_t i, std::size_t j) const;
};

/// Knobs of the sparse precision generator. Off-diagonal pairs are nonzero
/// with probability `density`, magnitudes uniform on [0.5, 1] with random
/// sign. The diagonal is |λmin(off-diagonal part)| + diag_margin; when
/// spectral_scale > 0 the matrix is then rescaled so λmax(A) = spectral_scale.
struct GeneratorOptions {
  double diag_margin = 0.1;
  double spectral_scale = 1.5;
};

GroundTruth gen_sparse_precision(std::size_t n, double density,
                                 std::uint64_t seed,
                                 const GeneratorOptions& opts = {});

/// Σ = A⁻¹ + E, E symmetric with entries uniform on [−σ, σ] (upper triangle
/// drawn, mirrored, diagonal included). Σ is not forced positive definite.
SymMatrix make_noisy_cov(const GroundTruth& gt, double sigma,
                         std::uint64_t seed);

struct RecoveryReport {
  double min_on_support = 0;
  double mean_on_support = 0;
  double max_off_support = 0;
  double mean_off_support = 0;
  std::size_t false_zeros = 0;
  std::size_t false_nonzeros = 0;
  double error_percent = 0;
  std::optional<std::pair<double, double>> threshold_interval;  // (lo, hi)
};

/// Off-diagonal entries of x are classified nonzero iff |xᵢⱼ| > threshold.
RecoveryReport recovery_report(const GroundTruth& gt, const SymMatrix& x,
                               double threshold);

struct SweepRow {
  double rho = 0;
  std::uint64_t seed = 0;
  RecoveryReport report;
  double primal_obj = 0;
  double dual_obj = 0;
  double gap = 0;
  double wall_seconds = 0;
  bool ok = true;
  std::string error;
};

struct SweepSummary {
  double rho = 0;
  std::size_t runs = 0;
  std::size_t failures = 0;
  double mean_error_percent = 0;
  double std_error_percent = 0;
  std::size_t interval_count = 0;  // runs with a non-empty threshold interval
  // Averages over successful runs, for the coefficient-magnitude plot.
  double mean_min_on_support = 0;
  double mean_mean_on_support = 0;
  double mean_max_off_support = 0;
  double mean_mean_off_support = 0;
};

struct SweepOptions {
  SolveOptions solver;
  std::optional<double> threshold;  // default: sigma
};

/// For every noise seed, draws Σ = A⁻¹ + E and solves for every ρ. Rows are
/// ordered by ρ then seed. A failed solve is recorded in its row and the
/// sweep continues.
std::vector<SweepRow> rho_sweep(const GroundTruth& gt, double sigma,
                                const std::vector<double>& rho_values,
                                const std::vector<std::uint64_t>& noise_seeds,
                                const SweepOptions& opts);

/// Mean and sample standard deviation of error_percent per ρ, in the order
/// the ρ values first appear.
std::vector<SweepSummary> summarize(const std::vector<SweepRow>& rows);

}  // namespace covsel
