#include "covsel/synth.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "covsel/errors.hpp"
#include "covsel/linalg.hpp"

namespace covsel {

bool GroundTruth::in_support(std::size_t i, std::size_t j) const {
  return i != j && a(i, j) != 0.0;
}

GroundTruth gen_sparse_precision(std::size_t n, double density, std::uint64_t seed,
                                 const GeneratorOptions& opts) {
  if (n < 2) throw InvalidArgument("gen_sparse_precision: n must be at least 2");
  if (!(density >= 0.0 && density < 1.0)) {
    throw InvalidArgument("gen_sparse_precision: density must lie in [0, 1)");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> magnitude(0.5, 1.0);
  const auto k = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i + 1; j < k; ++j) {
      const double draw = unit(rng);
      const double mag = magnitude(rng);
      const double sign = unit(rng) < 0.5 ? -1.0 : 1.0;
      if (draw < density) {
        a(i, j) = sign * mag;
        a(j, i) = sign * mag;
      }
    }
  }
  const double lmin = sym_eig(SymMatrix::from_symmetric(a)).eigenvalues(0);
  a.diagonal().array() += std::abs(lmin) + opts.diag_margin;
  if (opts.spectral_scale > 0.0) {
    const auto ed = sym_eig(SymMatrix::from_symmetric(a));
    a *= opts.spectral_scale / ed.eigenvalues(ed.eigenvalues.size() - 1);
  }

  GroundTruth gt;
  gt.a = SymMatrix::from_symmetric(std::move(a));
  gt.seed = seed;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (gt.in_support(i, j)) gt.support.emplace_back(i, j);
    }
  }
  return gt;
}

SymMatrix make_noisy_cov(const GroundTruth& gt, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw InvalidArgument("make_noisy_cov: sigma must be nonnegative");
  Eigen::MatrixXd s = inverse_spd(gt.a).dense();
  if (sigma == 0.0) return SymMatrix::from_symmetric(std::move(s));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> noise(-sigma, sigma);
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    for (Eigen::Index j = i; j < s.cols(); ++j) {
      const double e = noise(rng);
      s(i, j) += e;
      if (j != i) s(j, i) = s(i, j);
    }
  }
  return SymMatrix::from_symmetric(std::move(s));
}

RecoveryReport recovery_report(const GroundTruth& gt, const SymMatrix& x, double threshold) {
  const std::size_t n = gt.a.n();
  if (x.n() != n) throw InvalidArgument("recovery_report: dimension mismatch");
  RecoveryReport r;
  r.min_on_support = std::numeric_limits<double>::infinity();
  std::size_t on = 0;
  std::size_t off = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double mag = std::abs(x(i, j));
      const bool nonzero = mag > threshold;
      if (gt.in_support(i, j)) {
        ++on;
        r.min_on_support = std::min(r.min_on_support, mag);
        r.mean_on_support += mag;
        if (!nonzero) ++r.false_zeros;
      } else {
        ++off;
        r.max_off_support = std::max(r.max_off_support, mag);
        r.mean_off_support += mag;
        if (nonzero) ++r.false_nonzeros;
      }
    }
  }
  if (on > 0) r.mean_on_support /= static_cast<double>(on);
  else r.min_on_support = 0.0;
  if (off > 0) r.mean_off_support /= static_cast<double>(off);
  r.error_percent = 100.0 * static_cast<double>(r.false_zeros + r.false_nonzeros) /
                    static_cast<double>(n * n);
  if (on > 0 && r.min_on_support > r.max_off_support) {
    r.threshold_interval = std::make_pair(r.max_off_support, r.min_on_support);
  }
  return r;
}

std::vector<SweepRow> rho_sweep(const GroundTruth& gt, double sigma,
                                const std::vector<double>& rho_values,
                                const std::vector<std::uint64_t>& noise_seeds,
                                const SweepOptions& opts) {
  if (rho_values.empty()) throw InvalidArgument("rho_sweep: no rho values");
  for (double rho : rho_values) {
    if (!(rho > 0.0)) throw InvalidArgument("rho_sweep: rho values must be positive");
  }
  const double threshold = opts.threshold.value_or(sigma);

  std::vector<SymMatrix> samples;
  samples.reserve(noise_seeds.size());
  for (std::uint64_t seed : noise_seeds) samples.push_back(make_noisy_cov(gt, sigma, seed));

  std::vector<SweepRow> rows(rho_values.size() * noise_seeds.size());
  const auto cells = static_cast<std::ptrdiff_t>(rows.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t c = 0; c < cells; ++c) {
    const std::size_t r = static_cast<std::size_t>(c) / noise_seeds.size();
    const std::size_t s = static_cast<std::size_t>(c) % noise_seeds.size();
    SweepRow& row = rows[static_cast<std::size_t>(c)];
    row.rho = rho_values[r];
    row.seed = noise_seeds[s];
    const auto start = std::chrono::steady_clock::now();
    try {
      const Solution sol = solve(Problem(samples[s], row.rho), opts.solver);
      row.report = recovery_report(gt, sol.x, threshold);
      row.primal_obj = sol.primal_obj;
      row.dual_obj = sol.dual_obj;
      row.gap = sol.gap;
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
      row.gap = std::numeric_limits<double>::quiet_NaN();
    }
    row.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return rows;
}

std::vector<SweepSummary> summarize(const std::vector<SweepRow>& rows) {
  std::vector<SweepSummary> out;
  std::map<double, std::vector<double>> errors;
  for (const SweepRow& row : rows) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const SweepSummary& s) { return s.rho == row.rho; });
    if (it == out.end()) {
      out.push_back({});
      it = std::prev(out.end());
      it->rho = row.rho;
    }
    ++it->runs;
    if (!row.ok) {
      ++it->failures;
      continue;
    }
    if (row.report.threshold_interval) ++it->interval_count;
    it->mean_min_on_support += row.report.min_on_support;
    it->mean_mean_on_support += row.report.mean_on_support;
    it->mean_max_off_support += row.report.max_off_support;
    it->mean_mean_off_support += row.report.mean_off_support;
    errors[row.rho].push_back(row.report.error_percent);
  }
  for (SweepSummary& s : out) {
    const auto& e = errors[s.rho];
    if (e.empty()) {
      s.mean_error_percent = std::numeric_limits<double>::quiet_NaN();
      s.std_error_percent = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    const double count = static_cast<double>(e.size());
    s.mean_min_on_support /= count;
    s.mean_mean_on_support /= count;
    s.mean_max_off_support /= count;
    s.mean_mean_off_support /= count;
    double mean = 0.0;
    for (double v : e) mean += v;
    mean /= static_cast<double>(e.size());
    double var = 0.0;
    for (double v : e) var += (v - mean) * (v - mean);
    s.mean_error_percent = mean;
    s.std_error_percent = e.size() > 1 ? std::sqrt(var / static_cast<double>(e.size() - 1)) : 0.0;
  }
  return out;
}

}  // namespace covsel
