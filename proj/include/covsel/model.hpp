#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "covsel/sym_matrix.hpp"

namespace covsel {

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

/// Absolute tolerance on the dual box constraint ‖Σ̂ − Σ‖∞ ≤ ρ.
inline constexpr double kDualFeasibilityTol = 1e-9;

/// Penalized maximum-likelihood covariance selection instance:
///   max  log det X − ⟨Σ, X⟩ − ρ‖X‖₁   s.t.  αI ⪯ X ⪯ βI.
/// beta = kUnbounded means no upper bound.
class Problem {
 public:
  Problem(SymMatrix sigma, double rho, double alpha = 0.0,
          double beta = kUnbounded);

  const SymMatrix& sigma() const { return sigma_; }
  double rho() const { return rho_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  std::size_t n() const { return sigma_.n(); }
  bool has_finite_bounds() const;

  Problem with_bounds(double alpha, double beta) const;

 private:
  SymMatrix sigma_;
  double rho_;
  double alpha_;
  double beta_;
};

struct TracePoint {
  std::size_t iteration = 0;
  double seconds = 0.0;
  double gap = 0.0;
  double primal_obj = 0.0;
  double dual_obj = 0.0;
};

struct Solution {
  SymMatrix x;          // primal point X
  SymMatrix sigma_hat;  // dual point Σ̂ = Σ + U
  double primal_obj = -std::numeric_limits<double>::infinity();
  double dual_obj = std::numeric_limits<double>::infinity();
  double gap = std::numeric_limits<double>::infinity();
  std::size_t iterations = 0;
  bool converged = false;  // gap ≤ requested tolerance
  double wall_seconds = 0.0;
  std::vector<TracePoint> trace;
  std::vector<std::string> warnings;
};

/// log det X − ⟨Σ, X⟩ − ρ Σᵢⱼ|Xᵢⱼ| (diagonal included).
double primal_objective(const Problem& p, const SymMatrix& x);

/// −log det Σ̂ − n; throws InfeasibleDualPoint outside the ρ-box around Σ.
double dual_objective(const Problem& p, const SymMatrix& sigma_hat);

struct RobustInnerMin {
  double value;
  SymMatrix u_min;
};

/// min over ‖U‖∞ ≤ ρ of ⟨X, U⟩: value −ρ‖X‖₁ at U = −ρ·sign(X).
RobustInnerMin robust_inner_min(const SymMatrix& x, double rho);

/// ⟨Σ, X⟩ + ρ‖X‖₁ − n with X = Σ̂⁻¹; equals dual − primal objective at
/// (X, Σ̂).
double duality_gap(const Problem& p, const SymMatrix& sigma_hat);

/// Same as duality_gap but also returns X = Σ̂⁻¹.
std::pair<double, SymMatrix> duality_gap_with_primal(const Problem& p,
                                                     const SymMatrix& sigma_hat);

struct Bounds {
  double alpha;
  double beta;
};

/// α = 1/(‖Σ‖ + nρ), β = n/ρ. Throws DegeneratePenalty for ρ = 0.
Bounds default_bounds(const SymMatrix& sigma, double rho);

/// The problem's own bounds when finite and α > 0, otherwise the defaults.
Bounds resolved_bounds(const Problem& p);

}  // namespace covsel
