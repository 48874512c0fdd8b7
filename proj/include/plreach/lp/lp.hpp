#pragma once

#include <optional>
#include <span>
#include <vector>

#include "plreach/core/linear_spec.hpp"
#include "plreach/core/rational.hpp"

namespace plreach::lp {

/// Feasibility question over free real variables; same shape as LinearSpec.
using LpProblem = LinearSpec;

enum class LpStatus { Feasible, Infeasible };

struct LpVerdict {
  LpStatus status = LpStatus::Infeasible;
  /// Present iff Feasible; satisfies every constraint exactly.
  std::optional<Vector> witness;

  [[nodiscard]] bool feasible() const { return status == LpStatus::Feasible; }
};

/// Exact feasibility with a rational witness. Strict rows are handled with a
/// symbolic infinitesimal, so `a.x < b` is solved as `a.x <= b - eps` and the
/// infinitesimal is instantiated only when the witness is extracted.
LpVerdict feasible(const LpProblem& problem);

/// Element-wise `feasible`, in input order. With threads > 1 the problems
/// are distributed over a worker pool; results are identical either way.
std::vector<LpVerdict> feasible_batch(std::span<const LpProblem> problems,
                                      unsigned threads = 1);

}  // namespace plreach::lp
