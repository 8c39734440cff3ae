#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "covsel/bcd.hpp"
#include "covsel/model.hpp"
#include "covsel/nesterov.hpp"

namespace covsel {

enum class SolverKind { bcd, nesterov_primal, nesterov_dual };

std::string_view to_string(SolverKind kind);
std::optional<SolverKind> parse_solver_kind(std::string_view name);

/// Solver-agnostic options; `epsilon` is the target duality gap for every
/// solver.
struct SolveOptions {
  SolverKind kind = SolverKind::bcd;
  double epsilon = 0.1;
  std::size_t max_sweeps = 4;
  std::optional<std::size_t> max_iters;
  std::size_t trace_every = 10;
};

Solution solve(const Problem& p, const SolveOptions& opts);

}  // namespace covsel
