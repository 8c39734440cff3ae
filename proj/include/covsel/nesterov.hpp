#pragma once

#include <cstddef>
#include <optional>

#include "covsel/model.hpp"

namespace covsel {

/// Constants of the smoothing scheme for one problem instance and accuracy.
struct SmoothingParams {
  double d1_max = 0;       // D₁
  double sigma1 = 0;       // σ₁
  double d2_max = 0;       // D₂
  double sigma2 = 0;       // σ₂
  double lipschitz_m = 0;  // M
  double op_norm = 0;      // ‖A‖
  double mu = 0;           // ε/(2D₂)
  double lipschitz_l = 0;  // M + D₂‖A‖²/(2σ₂ε)
  /// Gradient Lipschitz constant the iteration actually steps with.
  /// Primal: M + ‖A‖²/(μσ₂). Dual: see dual_smoothing_params.
  double step_lipschitz = 0;
  double alpha = 0;
  double beta = 0;
};

enum class NesterovVariant { primal, dual };

struct NesterovConfig {
  double epsilon = 0.1;
  NesterovVariant variant = NesterovVariant::primal;
  std::optional<std::size_t> max_iters;  // default: iteration_bound
  std::size_t trace_every = 10;          // 0 disables gap checkpoints

  void validate() const;
};

/// Primal-variant constants over the spectral box of `p` (bounds must be
/// finite with α > 0, otherwise InfiniteBounds).
SmoothingParams smoothing_params(const Problem& p, double eps);

/// Dual-variant constants: box ‖U‖∞ ≤ ρ with d₁ = ‖U‖²_F/2, entropy prox on
/// {V ⪰ 0 : Tr V ≤ n/ρ}. step_lipschitz is 1/(1/u² + μ/u) where u bounds the
/// spectrum of the inner maximizer over the whole box.
SmoothingParams dual_smoothing_params(const Problem& p, double eps);

/// ceil(4‖A‖√(D₁D₂/(σ₁σ₂))/ε + √(M·D₁/(σ₁ε)))
std::size_t iteration_bound(const SmoothingParams& sp, double eps);

/// ceil(√(8·L·D₁/(σ₁ε))) with L = step_lipschitz: steps after which the
/// smoothed objective is within ε/2 of its minimum. The dual variant's default
/// budget is the larger of this and iteration_bound.
std::size_t step_iteration_bound(const SmoothingParams& sp, double eps);

/// Entrywise clamp(ρ·x/μ, −1, 1): maximizer of ⟨ρX, U⟩ − μ‖U‖²_F/2 over
/// ‖U‖∞ ≤ 1.
SymMatrix u_star_primal(const SymMatrix& x, double rho, double mu);

/// f_ε(X) = −log det X + ⟨Σ, X⟩ + max_U {⟨ρX, U⟩ − μ‖U‖²_F/2}.
double smoothed_objective(const SymMatrix& x, const Problem& p,
                          const SmoothingParams& sp);

/// −log det X + ⟨Σ, X⟩ + ρ‖X‖₁, i.e. the negated primal objective.
double nonsmooth_objective(const SymMatrix& x, const Problem& p);

/// ∇f_ε(X) = −X⁻¹ + Σ + ρ·U*(X).
SymMatrix grad_f_eps(const SymMatrix& x, const Problem& p,
                     const SmoothingParams& sp);

/// Iterate of the primal scheme. `weighted_grads` holds
/// Σ_{i<k} (i+1)/2 · ∇f_ε(Xᵢ).
struct NesterovPrimalState {
  std::size_t k = 0;
  SymMatrix x;
  Eigen::MatrixXd weighted_grads;
};

NesterovPrimalState nesterov_primal_init(const Problem& p,
                                         const SmoothingParams& sp);

struct NesterovStep {
  SymMatrix y;
  SymMatrix z;
  SymMatrix grad;
};

/// Advances `state` by one step: gradient at X_k, Y_k by projected gradient,
/// Z_k from the accumulated gradients, X_{k+1} = 2/(k+3)·Z_k + (k+1)/(k+3)·Y_k.
NesterovStep nesterov_step(NesterovPrimalState& state, const Problem& p,
                           const SmoothingParams& sp);

Solution nesterov_primal_solve(const Problem& p, const NesterovConfig& cfg);

/// argmax over {U ⪰ 0 : Tr U ≤ trace_cap} of
///   −⟨C, U⟩ + log det U − μ·(Tr U log U + log n).
SymMatrix entropy_inner_max(const SymMatrix& c, double mu, double trace_cap);

struct EntropyInnerMax {
  SymMatrix u;
  Eigen::VectorXd c_eigenvalues;  // ascending
  Eigen::VectorXd u_eigenvalues;  // paired with c_eigenvalues
  double multiplier = 0.0;        // trace-constraint multiplier λ ≥ 0
};

/// entropy_inner_max with the spectral data needed to check optimality.
EntropyInnerMax entropy_inner_max_detail(const SymMatrix& c, double mu,
                                         double trace_cap);

/// Scalar root u > 0 of 1/u − μ(log u + 1) = a, capped at `cap`.
double entropy_scalar_root(double a, double mu, double cap);

Solution nesterov_dual_solve(const Problem& p, const NesterovConfig& cfg);

}  // namespace covsel
