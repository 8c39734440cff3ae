#include "covsel/bcd.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "covsel/errors.hpp"
#include "covsel/linalg.hpp"

namespace covsel {

void BcdConfig::validate() const {
  if (max_sweeps == 0 || qp_max_iters == 0 || !(gap_tol > 0.0) || !(qp_tol > 0.0)) {
    throw InvalidArgument("BcdConfig: all limits and tolerances must be positive");
  }
}

BcdState bcd_init(const Problem& p) {
  Eigen::MatrixXd s = p.sigma().dense();
  s.diagonal().array() += p.rho();
  BcdState state{SymMatrix::from_symmetric(std::move(s)), 0, {}};
  if (!is_positive_definite(state.sigma_hat)) {
    std::ostringstream msg;
    msg << "sigma + rho*I is not positive definite (rho = " << p.rho()
        << "); the instance is too degenerate for dual block-coordinate descent";
    throw NotPositiveDefinite(msg.str());
  }
  return state;
}

Eigen::VectorXd column_qp(const SymMatrix& q11, const Eigen::VectorXd& sigma_col,
                          double rho, const BcdConfig& cfg,
                          const std::optional<Eigen::VectorXd>& warm_start) {
  const Eigen::Index m = sigma_col.size();
  if (static_cast<Eigen::Index>(q11.n()) != m) {
    throw InvalidArgument("column_qp: block and column sizes differ");
  }
  const Eigen::VectorXd lo = sigma_col.array() - rho;
  const Eigen::VectorXd hi = sigma_col.array() + rho;
  Eigen::VectorXd y = warm_start ? *warm_start : Eigen::VectorXd::Zero(m);
  if (y.size() != m) throw InvalidArgument("column_qp: warm start has wrong size");
  y = y.cwiseMax(lo).cwiseMin(hi);
  if (m == 0) return y;

  const Eigen::MatrixXd prec = inverse_spd(q11).dense();
  Eigen::VectorXd grad = prec * y;  // P·y

  for (std::size_t pass = 0; pass < cfg.qp_max_iters; ++pass) {
    double max_change = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      const double pii = prec(i, i);
      const double off = grad(i) - pii * y(i);
      const double next = std::clamp(-off / pii, lo(i), hi(i));
      const double d = next - y(i);
      if (d != 0.0) {
        grad.noalias() += d * prec.col(i);
        y(i) = next;
        max_change = std::max(max_change, std::abs(d) / std::max(1.0, std::abs(next)));
      }
    }
    if (max_change <= cfg.qp_tol) break;
  }
  return y;
}

BcdState bcd_sweep(BcdState state, const Problem& p, const BcdConfig& cfg,
                   const ColumnObserver& observer) {
  const std::size_t n = p.n();
  std::vector<Eigen::Index> others(n > 0 ? n - 1 : 0);
  const Eigen::MatrixXd& sigma = p.sigma().dense();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0, t = 0; k < n; ++k) {
      if (k != j) others[t++] = static_cast<Eigen::Index>(k);
    }
    const auto col = static_cast<Eigen::Index>(j);
    const Eigen::MatrixXd& cur = state.sigma_hat.dense();
    const SymMatrix q11 = SymMatrix::from_symmetric(cur(others, others));
    const Eigen::VectorXd s = sigma(others, col);
    const Eigen::VectorXd warm = cur(others, col);
    const Eigen::VectorXd y = column_qp(q11, s, p.rho(), cfg, warm);
    for (std::size_t t = 0; t < others.size(); ++t) {
      state.sigma_hat.set(static_cast<std::size_t>(others[t]), j, y(static_cast<Eigen::Index>(t)));
    }
    if (observer) observer(j, state.sigma_hat);
  }
  ++state.sweep;
  return state;
}

Solution bcd_solve(const Problem& p, const BcdConfig& cfg,
                   const ColumnObserver& observer) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  BcdState state = bcd_init(p);
  Solution sol;
  const auto checkpoint = [&] {
    auto [gap, x] = duality_gap_with_primal(p, state.sigma_hat);
    sol.x = std::move(x);
    sol.sigma_hat = state.sigma_hat;
    sol.primal_obj = primal_objective(p, sol.x);
    sol.dual_obj = dual_objective(p, state.sigma_hat);
    sol.gap = gap;
    sol.iterations = state.sweep;
    state.trace.push_back({state.sweep, elapsed(), gap, sol.primal_obj, sol.dual_obj});
    return gap <= cfg.gap_tol;
  };

  bool done = checkpoint();
  while (!done && state.sweep < cfg.max_sweeps) {
    state = bcd_sweep(std::move(state), p, cfg, observer);
    done = checkpoint();
  }
  sol.converged = done;
  sol.trace = state.trace;
  sol.wall_seconds = elapsed();
  return sol;
}

}  // namespace covsel
