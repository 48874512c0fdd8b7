#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "plreach/core/linear_spec.hpp"
#include "plreach/core/network.hpp"
#include "plreach/lp/lp.hpp"

namespace plreach::reach {

struct NodeRef {
  std::size_t layer = 0;
  std::size_t node = 0;

  friend auto operator<=>(const NodeRef&, const NodeRef&) = default;
};

/// Which linear piece each activation node is restricted to. Partial during
/// the search; an unassigned node contributes no constraints.
class PhaseAssignment {
 public:
  explicit PhaseAssignment(const Network& net);

  /// Throws InputError if the node or piece index is out of range.
  void assign(NodeRef node, std::size_t piece);
  void clear(NodeRef node);
  [[nodiscard]] std::optional<std::size_t> piece(NodeRef node) const;
  [[nodiscard]] bool complete() const;
  [[nodiscard]] std::size_t assigned_count() const;

 private:
  std::vector<std::size_t> piece_counts_;
  std::vector<std::size_t> offsets_;
  std::vector<std::optional<std::size_t>> pieces_;
};

enum class Status { Sat, Unsat, BudgetExhausted };
enum class VipStatus { Holds, Violated, BudgetExhausted };
enum class NeStatus { Equivalent, Distinct, BudgetExhausted };

struct SearchStats {
  std::uint64_t lp_calls = 0;
  std::uint64_t nodes_expanded = 0;

  SearchStats& operator+=(const SearchStats& o) {
    lp_calls += o.lp_calls;
    nodes_expanded += o.nodes_expanded;
    return *this;
  }
};

struct Verdict {
  Status status = Status::Unsat;
  /// Input vector, present iff Sat.
  std::optional<Vector> witness;
  SearchStats stats;
};

struct VipVerdict {
  VipStatus status = VipStatus::Holds;
  /// Input satisfying the input spec whose image leaves the output region.
  std::optional<Vector> counterexample;
  SearchStats stats;
};

struct NeVerdict {
  NeStatus status = NeStatus::Equivalent;
  /// Input on which the two networks differ.
  std::optional<Vector> distinguisher;
  SearchStats stats;
};

struct SolverOptions {
  /// Cap on search-node expansions; exceeding it yields BudgetExhausted.
  std::optional<std::uint64_t> node_budget;
  /// Worker threads for subtree exploration. The status never depends on
  /// this; with more than one thread the witness may.
  unsigned threads = 1;
};

/// Branching order: layer by layer, and within a layer by descending piece
/// count (ties keep node order).
std::vector<NodeRef> branching_order(const Network& net);

/// The LP over the network inputs that describes a phase assignment: the
/// input spec, the domain of every assigned piece (each pre-activation is
/// affine in the inputs once earlier layers are fixed) and, when requested
/// and the assignment is complete, the output spec. Every assigned node must
/// have its whole previous layer assigned, otherwise InputError.
lp::LpProblem phase_problem(const ReachInstance& inst,
                            const PhaseAssignment& phases, bool with_output);

/// Does some input satisfying the input spec map into the output spec?
Verdict solve_reach(const ReachInstance& inst, const SolverOptions& opts = {});

/// Does every input satisfying the input spec map into the output region?
/// Decided by one reach query per output row with that row negated.
VipVerdict solve_vip(const ReachInstance& inst, const SolverOptions& opts = {});

/// Do the two networks compute the same function on all of R^n?
NeVerdict solve_ne(const Network& a, const Network& b,
                   const SolverOptions& opts = {});

/// The complement of one row as a disjunction of rows: `<` becomes `>=`,
/// `<=` becomes `>`, and `=` splits into its two strict sides.
std::vector<LinearConstraint> negate(const LinearConstraint& row);

}  // namespace plreach::reach
