#include "covsel/nesterov.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "covsel/errors.hpp"
#include "covsel/kernels.hpp"
#include "covsel/linalg.hpp"
#include "eigen_span.hpp"

namespace covsel {

using detail::view;

namespace {

constexpr double kRootFloor = 1e-300;
constexpr int kRootMaxIters = 200;

void check_eps(double eps) {
  if (!std::isfinite(eps) || !(eps > 0.0)) {
    std::ostringstream msg;
    msg << "accuracy epsilon must be finite and positive, got " << eps;
    throw InvalidArgument(msg.str());
  }
}

SymMatrix combine(double a, const SymMatrix& x, double b, const SymMatrix& y) {
  Eigen::MatrixXd out(x.dense().rows(), x.dense().cols());
  kernels::combine(a, view(x.dense()), b, view(y.dense()), view(out));
  return SymMatrix::from_symmetric(std::move(out));
}

SymMatrix box_clamp(const Eigen::MatrixXd& m, double radius) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  kernels::scaled_clamp(view(m), 1.0, -radius, radius, view(out));
  return SymMatrix::from_symmetric(std::move(out));
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// Best primal and dual points seen so far; the gap is their difference,
/// which stays a valid certificate because both are feasible.
struct Certificate {
  const Problem& p;
  SymMatrix best_x;
  SymMatrix best_sigma_hat;
  double primal = -std::numeric_limits<double>::infinity();
  double dual = std::numeric_limits<double>::infinity();

  void offer_primal(const SymMatrix& x) {
    if (!is_positive_definite(x)) return;
    const double v = primal_objective(p, x);
    if (v > primal) {
      primal = v;
      best_x = x;
    }
  }

  /// Returns false when the candidate is not positive definite.
  bool offer_dual(const SymMatrix& sigma_hat) {
    if (!is_positive_definite(sigma_hat)) return false;
    const double v = dual_objective(p, sigma_hat);
    if (v < dual) {
      dual = v;
      best_sigma_hat = sigma_hat;
    }
    offer_primal(inverse_spd(sigma_hat));
    return true;
  }

  double gap() const { return dual - primal; }
  bool has_dual() const { return std::isfinite(dual); }
};

std::size_t iteration_budget(const NesterovConfig& cfg, const SmoothingParams& sp) {
  std::size_t bound = iteration_bound(sp, cfg.epsilon);
  if (cfg.variant == NesterovVariant::dual) {
    bound = std::max(bound, step_iteration_bound(sp, cfg.epsilon));
  }
  return cfg.max_iters ? std::min(bound, *cfg.max_iters) : bound;
}

bool is_checkpoint(std::size_t k, std::size_t budget, std::size_t every) {
  if (k + 1 == budget) return true;
  return every > 0 && (k + 1) % every == 0;
}

void finish(Solution& sol, const Certificate& cert, const NesterovConfig& cfg,
            const Stopwatch& clock) {
  sol.x = cert.best_x;
  sol.primal_obj = cert.primal;
  if (cert.has_dual()) {
    sol.sigma_hat = cert.best_sigma_hat;
    sol.dual_obj = cert.dual;
    sol.gap = cert.gap();
  }
  sol.converged = cert.has_dual() && sol.gap <= cfg.epsilon;
  sol.wall_seconds = clock.seconds();
}

}  // namespace

void NesterovConfig::validate() const {
  check_eps(epsilon);
  if (max_iters && *max_iters == 0) throw InvalidArgument("max_iters must be positive");
}

SmoothingParams smoothing_params(const Problem& p, double eps) {
  check_eps(eps);
  if (!std::isfinite(p.beta())) {
    throw InfiniteBounds("primal smoothing needs a finite upper bound beta");
  }
  if (!(p.alpha() > 0.0)) {
    throw InfiniteBounds("primal smoothing needs alpha > 0 (M = 1/alpha^2)");
  }
  const double n = static_cast<double>(p.n());
  SmoothingParams sp;
  sp.alpha = p.alpha();
  sp.beta = p.beta();
  sp.d1_max = n * std::log(p.beta() / p.alpha());
  sp.sigma1 = 1.0 / (p.beta() * p.beta());
  sp.d2_max = n * n / 2.0;
  sp.sigma2 = 1.0;
  sp.lipschitz_m = 1.0 / (p.alpha() * p.alpha());
  sp.op_norm = p.rho();
  sp.mu = eps / (2.0 * sp.d2_max);
  sp.lipschitz_l =
      sp.lipschitz_m + sp.d2_max * sp.op_norm * sp.op_norm / (2.0 * sp.sigma2 * eps);
  sp.step_lipschitz = sp.lipschitz_m + sp.op_norm * sp.op_norm / (sp.mu * sp.sigma2);
  return sp;
}

SmoothingParams dual_smoothing_params(const Problem& p, double eps) {
  check_eps(eps);
  if (!(p.rho() > 0.0)) {
    throw DegeneratePenalty("the dual method needs rho > 0 (trace cap n/rho)");
  }
  const double n = static_cast<double>(p.n());
  SmoothingParams sp;
  sp.d1_max = p.rho() * p.rho() * n * n / 2.0;
  sp.sigma1 = 1.0;
  // log n vanishes at n = 1; log 2 keeps the smoothing coefficient finite.
  sp.d2_max = std::max(std::log(n), std::log(2.0));
  sp.sigma2 = 0.5;
  sp.lipschitz_m = 0.0;
  sp.op_norm = 1.0;
  sp.mu = eps / (2.0 * sp.d2_max);
  sp.lipschitz_l =
      sp.lipschitz_m + sp.d2_max * sp.op_norm * sp.op_norm / (2.0 * sp.sigma2 * eps);

  // Over the box, λmin(Σ + U) ≥ λmin(Σ) − nρ, which bounds every eigenvalue
  // of the inner maximizer by u_max; the inner objective is then strongly
  // concave with modulus 1/u_max² + μ/u_max on the relevant set.
  const double cap = n / p.rho();
  const double c_low = sym_eig(p.sigma()).eigenvalues(0) - n * p.rho();
  const double u_max = entropy_scalar_root(c_low, sp.mu, cap);
  sp.step_lipschitz = 1.0 / (1.0 / (u_max * u_max) + sp.mu / u_max);
  sp.alpha = -p.rho();
  sp.beta = p.rho();
  return sp;
}

std::size_t iteration_bound(const SmoothingParams& sp, double eps) {
  check_eps(eps);
  const double first =
      4.0 * sp.op_norm * std::sqrt(sp.d1_max * sp.d2_max / (sp.sigma1 * sp.sigma2)) / eps;
  const double second = std::sqrt(sp.lipschitz_m * sp.d1_max / (sp.sigma1 * eps));
  const double total = std::ceil(first + second);
  constexpr auto kMax = std::numeric_limits<std::size_t>::max();
  if (!(total < static_cast<double>(kMax))) return kMax;
  return static_cast<std::size_t>(total);
}

std::size_t step_iteration_bound(const SmoothingParams& sp, double eps) {
  check_eps(eps);
  const double total = std::ceil(std::sqrt(8.0 * sp.step_lipschitz * sp.d1_max / (sp.sigma1 * eps)));
  constexpr auto kMax = std::numeric_limits<std::size_t>::max();
  if (!(total < static_cast<double>(kMax))) return kMax;
  return static_cast<std::size_t>(total);
}

SymMatrix u_star_primal(const SymMatrix& x, double rho, double mu) {
  if (!(mu > 0.0)) throw InvalidArgument("u_star_primal: mu must be positive");
  Eigen::MatrixXd out(x.dense().rows(), x.dense().cols());
  kernels::scaled_clamp(view(x.dense()), rho / mu, -1.0, 1.0, view(out));
  return SymMatrix::from_symmetric(std::move(out));
}

double smoothed_objective(const SymMatrix& x, const Problem& p,
                          const SmoothingParams& sp) {
  return -chol_logdet(x) + kernels::frob_inner(view(p.sigma().dense()), view(x.dense())) +
         kernels::huber_sum(view(x.dense()), p.rho(), sp.mu);
}

double nonsmooth_objective(const SymMatrix& x, const Problem& p) {
  return -primal_objective(p, x);
}

SymMatrix grad_f_eps(const SymMatrix& x, const Problem& p, const SmoothingParams& sp) {
  const SymMatrix u = u_star_primal(x, p.rho(), sp.mu);
  return SymMatrix::from_symmetric(-inverse_spd(x).dense() + p.sigma().dense() +
                                   p.rho() * u.dense());
}

NesterovPrimalState nesterov_primal_init(const Problem& p, const SmoothingParams& sp) {
  const auto n = static_cast<Eigen::Index>(p.n());
  return {0, sp.beta * SymMatrix::identity(p.n()), Eigen::MatrixXd::Zero(n, n)};
}

NesterovStep nesterov_step(NesterovPrimalState& state, const Problem& p,
                           const SmoothingParams& sp) {
  const double k = static_cast<double>(state.k);
  SymMatrix grad = grad_f_eps(state.x, p, sp);
  const double step = 1.0 / sp.step_lipschitz;
  SymMatrix y = proj_spectral_box(combine(1.0, state.x, -step, grad), sp.alpha, sp.beta);
  state.weighted_grads += 0.5 * (k + 1.0) * grad.dense();
  SymMatrix z = logdet_linear_min(SymMatrix::from_symmetric(state.weighted_grads),
                                  sp.step_lipschitz / sp.sigma1, sp.alpha, sp.beta);
  state.x = combine(2.0 / (k + 3.0), z, (k + 1.0) / (k + 3.0), y);
  ++state.k;
  return {std::move(y), std::move(z), std::move(grad)};
}

Solution nesterov_primal_solve(const Problem& p, const NesterovConfig& cfg) {
  cfg.validate();
  Stopwatch clock;
  const Bounds b = resolved_bounds(p);
  const Problem bounded = p.with_bounds(b.alpha, b.beta);
  const SmoothingParams sp = smoothing_params(bounded, cfg.epsilon);
  const std::size_t budget = iteration_budget(cfg, sp);

  Solution sol;
  Certificate cert{p, SymMatrix{}, SymMatrix{}};
  NesterovPrimalState state = nesterov_primal_init(bounded, sp);
  for (std::size_t k = 0; k < budget; ++k) {
    NesterovStep st = nesterov_step(state, bounded, sp);
    sol.iterations = k + 1;
    if (!is_checkpoint(k, budget, cfg.trace_every)) continue;

    cert.offer_primal(st.y);
    const SymMatrix y_inv = inverse_spd(st.y);
    // Two dual candidates: the smoothed subgradient and Y⁻¹ clipped to the box.
    cert.offer_dual(p.sigma() + p.rho() * u_star_primal(st.y, p.rho(), sp.mu));
    cert.offer_dual(p.sigma() + box_clamp(y_inv.dense() - p.sigma().dense(), p.rho()));
    sol.trace.push_back({k + 1, clock.seconds(), cert.gap(), cert.primal, cert.dual});
    if (cert.has_dual() && cert.gap() <= cfg.epsilon) break;
  }
  if (!cert.has_dual()) {
    sol.warnings.emplace_back("no positive definite dual point was found; gap not certified");
    sol.sigma_hat = p.sigma() + p.rho() * u_star_primal(cert.best_x, p.rho(), sp.mu);
  }
  finish(sol, cert, cfg, clock);
  return sol;
}

double entropy_scalar_root(double a, double mu, double cap) {
  if (!std::isfinite(a) || !(mu >= 0.0) || !(cap > 0.0)) {
    std::ostringstream msg;
    msg << "entropy_scalar_root: bad arguments a=" << a << " mu=" << mu << " cap=" << cap;
    throw NumericalFailure(msg.str());
  }
  // F(t) = e^{-t} − μ(t + 1) − a with u = e^t: strictly decreasing and convex.
  const auto f = [&](double t) { return std::exp(-t) - mu * (t + 1.0) - a; };
  double lo = std::log(kRootFloor);
  double hi = std::log(cap);
  if (f(hi) >= 0.0) return cap;
  if (f(lo) < 0.0) {
    std::ostringstream msg;
    msg << "entropy_scalar_root: root below " << kRootFloor << " for a=" << a;
    throw NumericalFailure(msg.str());
  }
  double t = a > 0.0 ? std::clamp(-std::log(a), lo, hi) : hi;
  for (int it = 0; it < kRootMaxIters; ++it) {
    const double ft = f(t);
    if (ft == 0.0) return std::exp(t);
    if (ft > 0.0) lo = t; else hi = t;
    const double deriv = -std::exp(-t) - mu;
    double next = t - ft / deriv;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= 1e-15 * std::max(1.0, std::abs(t)) || hi - lo <= 1e-15 * std::max(1.0, std::abs(t))) {
      return std::exp(next);
    }
    t = next;
  }
  std::ostringstream msg;
  msg << "entropy_scalar_root: no convergence after " << kRootMaxIters
      << " iterations (a=" << a << ", mu=" << mu << ", bracket [" << lo << ", " << hi << "])";
  throw NumericalFailure(msg.str());
}

EntropyInnerMax entropy_inner_max_detail(const SymMatrix& c, double mu, double trace_cap) {
  if (!(mu > 0.0) || !(trace_cap > 0.0)) {
    throw InvalidArgument("entropy_inner_max: mu and trace_cap must be positive");
  }
  const EigenDecomposition ed = sym_eig(c);
  const Eigen::VectorXd& lam = ed.eigenvalues;
  Eigen::VectorXd u(lam.size());
  const auto fill = [&](double shift) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
      u(i) = entropy_scalar_root(lam(i) + shift, mu, trace_cap);
      total += u(i);
    }
    return total;
  };

  double multiplier = 0.0;
  if (fill(0.0) > trace_cap) {
    double lo = 0.0;
    double hi = 1.0;
    while (fill(hi) > trace_cap) {
      lo = hi;
      hi *= 2.0;
      if (!std::isfinite(hi) || hi > 1e300) {
        throw NumericalFailure("entropy_inner_max: trace multiplier bracket diverged");
      }
    }
    for (int it = 0; it < kRootMaxIters && hi - lo > 1e-15 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (fill(mid) > trace_cap) lo = mid; else hi = mid;
    }
    multiplier = hi;
    fill(hi);
  }
  return {ed.recompose(u), lam, u, multiplier};
}

SymMatrix entropy_inner_max(const SymMatrix& c, double mu, double trace_cap) {
  return entropy_inner_max_detail(c, mu, trace_cap).u;
}

Solution nesterov_dual_solve(const Problem& p, const NesterovConfig& cfg) {
  cfg.validate();
  Stopwatch clock;
  const SmoothingParams sp = dual_smoothing_params(p, cfg.epsilon);
  const std::size_t budget = iteration_budget(cfg, sp);
  const double cap = static_cast<double>(p.n()) / p.rho();
  const double step = 1.0 / sp.step_lipschitz;
  const auto n = static_cast<Eigen::Index>(p.n());

  Solution sol;
  Certificate cert{p, SymMatrix{}, SymMatrix{}};
  SymMatrix u = SymMatrix::zeros(p.n());
  Eigen::MatrixXd weighted_grads = Eigen::MatrixXd::Zero(n, n);
  bool warned = false;
  for (std::size_t k = 0; k < budget; ++k) {
    const double kd = static_cast<double>(k);
    const SymMatrix v = entropy_inner_max(p.sigma() + u, sp.mu, cap);
    // ∇ = −V; projections onto the box are entrywise clamps.
    const SymMatrix y = box_clamp(u.dense() + step * v.dense(), p.rho());
    weighted_grads -= 0.5 * (kd + 1.0) * v.dense();
    const SymMatrix z = box_clamp(-(sp.sigma1 / sp.step_lipschitz) * weighted_grads, p.rho());
    u = combine(2.0 / (kd + 3.0), z, (kd + 1.0) / (kd + 3.0), y);
    sol.iterations = k + 1;
    if (!is_checkpoint(k, budget, cfg.trace_every)) continue;

    cert.offer_primal(v);
    if (!cert.offer_dual(p.sigma() + y) && !warned) {
      sol.warnings.emplace_back(
          "sigma + U is not positive definite at an iterate; gap evaluation skipped there");
      warned = true;
    }
    sol.trace.push_back({k + 1, clock.seconds(), cert.gap(), cert.primal, cert.dual});
    if (cert.has_dual() && cert.gap() <= cfg.epsilon) break;
  }
  if (!cert.has_dual()) {
    sol.warnings.emplace_back("no positive definite dual point was found; gap not certified");
    sol.sigma_hat = p.sigma() + u;
  }
  finish(sol, cert, cfg, clock);
  return sol;
}

}  // namespace covsel
