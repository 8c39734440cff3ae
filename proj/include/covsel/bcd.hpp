#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "covsel/model.hpp"

namespace covsel {

struct BcdConfig {
  std::size_t max_sweeps = 4;
  double gap_tol = 0.1;
  double qp_tol = 1e-8;  // per-coordinate change, relative to max(1, |y_i|)
  std::size_t qp_max_iters = 1000;

  void validate() const;
};

struct BcdState {
  SymMatrix sigma_hat;
  std::size_t sweep = 0;
  std::vector<TracePoint> trace;
};

/// Σ̂₀ = Σ + ρI. Throws NotPositiveDefinite when the shift is insufficient.
BcdState bcd_init(const Problem& p);

/// Minimizes yᵀ Q⁻¹ y over the box ‖y − s‖∞ ≤ ρ by cyclic exact coordinate
/// minimization. `warm_start` must be feasible; the default start is the
/// point of the box closest to 0.
Eigen::VectorXd column_qp(const SymMatrix& q11, const Eigen::VectorXd& sigma_col,
                          double rho, const BcdConfig& cfg,
                          const std::optional<Eigen::VectorXd>& warm_start = {});

/// Called after each column update with the column index and new Σ̂.
using ColumnObserver = std::function<void(std::size_t, const SymMatrix&)>;

/// One pass over columns 0..n−1, each replaced by its column_qp optimum.
BcdState bcd_sweep(BcdState state, const Problem& p, const BcdConfig& cfg,
                   const ColumnObserver& observer = {});

/// Sweeps until duality_gap ≤ gap_tol or max_sweeps. Exhausting the sweep
/// budget is not an error; the Solution carries the achieved gap.
Solution bcd_solve(const Problem& p, const BcdConfig& cfg,
                   const ColumnObserver& observer = {});

}  // namespace covsel
