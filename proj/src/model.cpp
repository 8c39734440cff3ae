#include "covsel/model.hpp"

#include <cmath>
#include <sstream>

#include "covsel/errors.hpp"
#include "covsel/kernels.hpp"
#include "covsel/linalg.hpp"
#include "eigen_span.hpp"

namespace covsel {

using detail::view;

Problem::Problem(SymMatrix sigma, double rho, double alpha, double beta)
    : sigma_(std::move(sigma)), rho_(rho), alpha_(alpha), beta_(beta) {
  if (!std::isfinite(rho) || rho < 0.0) {
    std::ostringstream msg;
    msg << "penalty must be finite and nonnegative, got " << rho;
    throw InvalidArgument(msg.str());
  }
  if (!(alpha >= 0.0) || std::isnan(beta) || !(alpha < beta)) {
    std::ostringstream msg;
    msg << "invalid bounds alpha=" << alpha << " beta=" << beta;
    throw InvalidBounds(msg.str());
  }
  if (sigma_.n() == 0) throw InvalidArgument("empty covariance matrix");
}

bool Problem::has_finite_bounds() const {
  return alpha_ > 0.0 && std::isfinite(beta_);
}

Problem Problem::with_bounds(double alpha, double beta) const {
  return Problem(sigma_, rho_, alpha, beta);
}

double primal_objective(const Problem& p, const SymMatrix& x) {
  const double logdet = chol_logdet(x);
  return logdet - kernels::frob_inner(view(p.sigma().dense()), view(x.dense())) -
         p.rho() * kernels::l1_norm(view(x.dense()));
}

namespace {

void check_dual_feasible(const Problem& p, const SymMatrix& sigma_hat) {
  if (sigma_hat.n() != p.n()) throw InvalidArgument("dual point has wrong dimension");
  const double dev = kernels::max_abs_diff(view(sigma_hat.dense()), view(p.sigma().dense()));
  if (dev > p.rho() + kDualFeasibilityTol) {
    std::ostringstream msg;
    msg << "dual point violates the box: max|sigma_hat - sigma| = " << dev
        << " > rho = " << p.rho();
    throw InfeasibleDualPoint(msg.str());
  }
}

}  // namespace

double dual_objective(const Problem& p, const SymMatrix& sigma_hat) {
  check_dual_feasible(p, sigma_hat);
  return -chol_logdet(sigma_hat) - static_cast<double>(p.n());
}

RobustInnerMin robust_inner_min(const SymMatrix& x, double rho) {
  Eigen::MatrixXd u = (-rho) * x.dense().cwiseSign();
  return {-rho * kernels::l1_norm(view(x.dense())), SymMatrix::from_symmetric(std::move(u))};
}

std::pair<double, SymMatrix> duality_gap_with_primal(const Problem& p,
                                                     const SymMatrix& sigma_hat) {
  check_dual_feasible(p, sigma_hat);
  SymMatrix x = inverse_spd(sigma_hat);
  const double gap = kernels::frob_inner(view(p.sigma().dense()), view(x.dense())) +
                     p.rho() * kernels::l1_norm(view(x.dense())) -
                     static_cast<double>(p.n());
  return {gap, std::move(x)};
}

double duality_gap(const Problem& p, const SymMatrix& sigma_hat) {
  return duality_gap_with_primal(p, sigma_hat).first;
}

Bounds default_bounds(const SymMatrix& sigma, double rho) {
  if (!(rho > 0.0)) {
    throw DegeneratePenalty("default bounds need rho > 0 (beta = n/rho is infinite otherwise)");
  }
  const double n = static_cast<double>(sigma.n());
  return {1.0 / (spectral_norm(sigma) + n * rho), n / rho};
}

Bounds resolved_bounds(const Problem& p) {
  if (p.has_finite_bounds()) return {p.alpha(), p.beta()};
  if (!(p.rho() > 0.0)) {
    throw InfiniteBounds("finite bounds 0 < alpha < beta are required when rho = 0");
  }
  const Bounds def = default_bounds(p.sigma(), p.rho());
  Bounds b{p.alpha() > 0.0 ? p.alpha() : def.alpha,
           std::isfinite(p.beta()) ? p.beta() : def.beta};
  if (!(b.alpha < b.beta)) {
    std::ostringstream msg;
    msg << "resolved bounds are empty: [" << b.alpha << ", " << b.beta << "]";
    throw InvalidBounds(msg.str());
  }
  return b;
}

}  // namespace covsel
