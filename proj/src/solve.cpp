#include "covsel/solve.hpp"

namespace covsel {

std::string_view to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::bcd: return "bcd";
    case SolverKind::nesterov_primal: return "nesterov-primal";
    case SolverKind::nesterov_dual: return "nesterov-dual";
  }
  return "unknown";
}

std::optional<SolverKind> parse_solver_kind(std::string_view name) {
  if (name == "bcd") return SolverKind::bcd;
  if (name == "nesterov-primal") return SolverKind::nesterov_primal;
  if (name == "nesterov-dual") return SolverKind::nesterov_dual;
  return std::nullopt;
}

Solution solve(const Problem& p, const SolveOptions& opts) {
  switch (opts.kind) {
    case SolverKind::bcd: {
      BcdConfig cfg;
      cfg.max_sweeps = opts.max_sweeps;
      cfg.gap_tol = opts.epsilon;
      return bcd_solve(p, cfg);
    }
    case SolverKind::nesterov_primal:
    case SolverKind::nesterov_dual: {
      NesterovConfig cfg;
      cfg.epsilon = opts.epsilon;
      cfg.max_iters = opts.max_iters;
      cfg.trace_every = opts.trace_every;
      if (opts.kind == SolverKind::nesterov_primal) {
        cfg.variant = NesterovVariant::primal;
        return nesterov_primal_solve(p, cfg);
      }
      cfg.variant = NesterovVariant::dual;
      return nesterov_dual_solve(p, cfg);
    }
  }
  return {};
}

}  // namespace covsel
