#include "plreach/reach/solver.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>
#include <utility>

#include "plreach/core/errors.hpp"

namespace plreach::reach {

PhaseAssignment::PhaseAssignment(const Network& net) {
  for (const Layer& layer : net.layers()) {
    offsets_.push_back(piece_counts_.size());
    for (const Activation& act : layer.activations) {
      piece_counts_.push_back(act.piece_count());
    }
  }
  offsets_.push_back(piece_counts_.size());
  pieces_.resize(piece_counts_.size());
}

namespace {

std::size_t flat_index(const std::vector<std::size_t>& offsets, NodeRef n) {
  if (n.layer + 1 >= offsets.size() ||
      n.node >= offsets[n.layer + 1] - offsets[n.layer]) {
    throw InputError("node (" + std::to_string(n.layer) + ", " +
                     std::to_string(n.node) + ") is not in the network");
  }
  return offsets[n.layer] + n.node;
}

}  // namespace

void PhaseAssignment::assign(NodeRef node, std::size_t piece) {
  const std::size_t i = flat_index(offsets_, node);
  if (piece >= piece_counts_[i]) {
    throw InputError("piece " + std::to_string(piece) + " out of range for node (" +
                     std::to_string(node.layer) + ", " +
                     std::to_string(node.node) + ")");
  }
  pieces_[i] = piece;
}

void PhaseAssignment::clear(NodeRef node) {
  pieces_[flat_index(offsets_, node)].reset();
}

std::optional<std::size_t> PhaseAssignment::piece(NodeRef node) const {
  return pieces_[flat_index(offsets_, node)];
}

bool PhaseAssignment::complete() const {
  return std::all_of(pieces_.begin(), pieces_.end(),
                     [](const auto& p) { return p.has_value(); });
}

std::size_t PhaseAssignment::assigned_count() const {
  return static_cast<std::size_t>(std::count_if(
      pieces_.begin(), pieces_.end(), [](const auto& p) { return p.has_value(); }));
}

std::vector<NodeRef> branching_order(const Network& net) {
  std::vector<NodeRef> order;
  for (std::size_t l = 0; l < net.depth(); ++l) {
    const auto& acts = net.layer(l).activations;
    std::vector<std::size_t> idx(acts.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return acts[a].piece_count() > acts[b].piece_count();
    });
    for (std::size_t i : idx) order.push_back({l, i});
  }
  return order;
}

std::vector<LinearConstraint> negate(const LinearConstraint& row) {
  switch (row.cmp) {
    case Comparator::Le:
      return {LinearConstraint::gt(row.coeffs, row.rhs)};
    case Comparator::Lt:
      return {LinearConstraint::ge(row.coeffs, row.rhs)};
    case Comparator::Eq:
      return {LinearConstraint{row.coeffs, Comparator::Lt, row.rhs},
              LinearConstraint::gt(row.coeffs, row.rhs)};
  }
  return {};
}

namespace {

/// coeffs . x + constant over the network inputs.
struct Affine {
  Vector coeffs;
  Rational constant;

  [[nodiscard]] bool is_constant() const {
    return std::all_of(coeffs.begin(), coeffs.end(),
                       [](const Rational& c) { return c.is_zero(); });
  }
};

Affine pre_activation(const Layer& layer, std::size_t node,
                      const std::vector<Affine>& previous, std::size_t dim) {
  Affine s{Vector(dim), layer.bias[node]};
  const auto w = layer.weights.row(node);
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (w[j].is_zero()) continue;
    const Affine& p = previous[j];
    for (std::size_t k = 0; k < dim; ++k) {
      if (!p.coeffs[k].is_zero()) s.coeffs[k] += w[j] * p.coeffs[k];
    }
    s.constant += w[j] * p.constant;
  }
  return s;
}

std::vector<Affine> input_forms(std::size_t dim) {
  std::vector<Affine> forms(dim);
  for (std::size_t i = 0; i < dim; ++i) forms[i] = {unit(dim, i), 0};
  return forms;
}

/// Rows over the inputs restricting s to the piece's domain. Rows that do
/// not mention the inputs are decided here; nullopt means "never".
std::optional<std::vector<LinearConstraint>> domain_rows(const Affine& s,
                                                         const Piece& piece) {
  std::vector<LinearConstraint> rows;
  if (s.is_constant()) {
    if (!piece.contains(s.constant)) return std::nullopt;
    return rows;
  }
  Vector neg(s.coeffs.size());
  for (std::size_t k = 0; k < neg.size(); ++k) neg[k] = -s.coeffs[k];
  if (piece.is_point()) {
    rows.push_back({s.coeffs, Comparator::Eq, *piece.lo - s.constant});
    return rows;
  }
  if (piece.lo) {
    rows.push_back({neg, piece.lo_closed ? Comparator::Le : Comparator::Lt,
                    s.constant - *piece.lo});
  }
  if (piece.hi) {
    rows.push_back({s.coeffs, piece.hi_closed ? Comparator::Le : Comparator::Lt,
                    *piece.hi - s.constant});
  }
  return rows;
}

Affine apply_piece(const Affine& s, const Piece& piece) {
  Affine y{Vector(s.coeffs.size()), piece.slope * s.constant + piece.intercept};
  if (!piece.slope.is_zero()) {
    for (std::size_t k = 0; k < y.coeffs.size(); ++k) {
      if (!s.coeffs[k].is_zero()) y.coeffs[k] = piece.slope * s.coeffs[k];
    }
  }
  return y;
}

/// The output spec pulled back through the (affine) output forms.
std::optional<std::vector<LinearConstraint>> output_rows(
    const LinearSpec& out, const std::vector<Affine>& outputs, std::size_t dim) {
  std::vector<LinearConstraint> rows;
  for (const LinearConstraint& c : out.constraints()) {
    LinearConstraint row{Vector(dim), c.cmp, c.rhs};
    for (std::size_t j = 0; j < outputs.size(); ++j) {
      if (c.coeffs[j].is_zero()) continue;
      for (std::size_t k = 0; k < dim; ++k) {
        if (!outputs[j].coeffs[k].is_zero()) {
          row.coeffs[k] += c.coeffs[j] * outputs[j].coeffs[k];
        }
      }
      row.rhs -= c.coeffs[j] * outputs[j].constant;
    }
    if (row.is_degenerate()) {
      if (!row.holds(Vector(dim))) return std::nullopt;
      continue;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

bool all_hold(const std::vector<LinearConstraint>& rows, const Vector& x) {
  return std::all_of(rows.begin(), rows.end(),
                     [&](const LinearConstraint& r) { return r.holds(x); });
}

struct BudgetExceeded {};

/// State shared by every worker of one query.
struct Shared {
  std::optional<std::uint64_t> budget;
  std::atomic<std::uint64_t> expanded{0};
  std::atomic<bool> stop{false};
};

/// Depth-first search over phase patterns. Each assigned node fixes an
/// affine form of its output in terms of the inputs, so the LP always lives
/// over the input variables. An LP is solved only when a branch adds rows
/// that the current witness does not already satisfy.
class Search {
 public:
  Search(const ReachInstance& inst, const std::vector<NodeRef>& order,
         Shared& shared)
      : inst_(inst), order_(order), shared_(shared), dim_(inst.network.input_dim()) {
    forms_.push_back(input_forms(dim_));
    for (const Layer& layer : inst.network.layers()) {
      forms_.emplace_back(layer.size());
    }
    rows_ = inst.input_spec.constraints();
    linear_ = std::none_of(order.begin(), order.end(), [&](const NodeRef& n) {
      return inst.network.layer(n.layer).activations[n.node].piece_count() > 1;
    });
  }

  /// Explores the subtree below `depth` assigned nodes.
  bool run(std::size_t depth) { return dfs(depth); }

  /// While collecting, the search stops at `split` assigned nodes and
  /// records a copy of its state instead of descending.
  void collect_frontier(std::size_t split, std::vector<Search>* out) {
    split_ = split;
    frontier_ = out;
  }
  void stop_collecting() {
    split_ = static_cast<std::size_t>(-1);
    frontier_ = nullptr;
  }

  [[nodiscard]] const SearchStats& stats() const { return stats_; }
  [[nodiscard]] SearchStats take_stats() { return std::exchange(stats_, {}); }
  [[nodiscard]] const std::optional<Vector>& found() const { return found_; }

 private:
  bool solve_lp(const std::vector<LinearConstraint>& rows) {
    ++stats_.lp_calls;
    auto v = lp::feasible(lp::LpProblem(dim_, rows));
    if (!v.feasible()) return false;
    witness_ = std::move(v.witness);
    witness_valid_ = true;
    return true;
  }

  bool leaf() {
    auto out = output_rows(inst_.output_spec, forms_.back(), dim_);
    if (!out) {
      /// A linear net is always decided by its single LP, even when the
      /// pulled-back output spec is a contradiction.
      if (!linear_) return false;
      out.emplace(1, LinearConstraint{Vector(dim_), Comparator::Lt, 0});
    }
    if (witness_valid_ && all_hold(*out, *witness_)) {
      found_ = witness_;
      return true;
    }
    std::vector<LinearConstraint> rows = rows_;
    rows.insert(rows.end(), out->begin(), out->end());
    if (!solve_lp(rows)) return false;
    found_ = witness_;
    return true;
  }

  bool dfs(std::size_t depth) {
    if (shared_.stop.load(std::memory_order_relaxed)) return false;
    if (depth == order_.size()) return leaf();
    if (depth == split_) {
      frontier_->push_back(*this);
      frontier_->back().stop_collecting();
      frontier_->back().stats_ = {};
      return false;
    }
    const NodeRef n = order_[depth];
    const Layer& layer = inst_.network.layer(n.layer);
    const Activation& act = layer.activations[n.node];
    const Affine s = pre_activation(layer, n.node, forms_[n.layer], dim_);
    const bool branching = act.piece_count() > 1;
    for (const Piece& piece : act.pieces()) {
      ++stats_.nodes_expanded;
      const auto total = shared_.expanded.fetch_add(1, std::memory_order_relaxed) + 1;
      if (shared_.budget && total > *shared_.budget) throw BudgetExceeded{};
      auto extra = domain_rows(s, piece);
      if (!extra) continue;
      const std::size_t saved_rows = rows_.size();
      const std::optional<Vector> saved_witness = witness_;
      const bool saved_valid = witness_valid_;
      rows_.insert(rows_.end(), extra->begin(), extra->end());
      bool feasible = true;
      if (witness_valid_ && !all_hold(*extra, *witness_)) witness_valid_ = false;
      // The leaf solves its own LP, so the last node never needs one here.
      if (branching && !witness_valid_ && depth + 1 < order_.size()) {
        feasible = solve_lp(rows_);
      }
      if (feasible) {
        forms_[n.layer + 1][n.node] = apply_piece(s, piece);
        if (dfs(depth + 1)) return true;
      }
      rows_.resize(saved_rows);
      witness_ = saved_witness;
      witness_valid_ = saved_valid;
    }
    return false;
  }

  const ReachInstance& inst_;
  const std::vector<NodeRef>& order_;
  Shared& shared_;
  std::size_t dim_;
  bool linear_ = false;
  std::vector<std::vector<Affine>> forms_;
  std::vector<LinearConstraint> rows_;
  std::optional<Vector> witness_;
  /// Whether witness_ satisfies every row in rows_.
  bool witness_valid_ = false;
  std::optional<Vector> found_;
  SearchStats stats_;
  std::size_t split_ = static_cast<std::size_t>(-1);
  std::vector<Search>* frontier_ = nullptr;
};

/// Number of leading branching nodes whose piece product reaches `target`.
std::size_t split_depth(const Network& net, const std::vector<NodeRef>& order,
                        std::size_t target) {
  std::size_t product = 1;
  for (std::size_t d = 0; d < order.size(); ++d) {
    if (product >= target) return d;
    product *= net.layer(order[d].layer).activations[order[d].node].piece_count();
  }
  return order.size();
}

Verdict solve_parallel(const ReachInstance& inst, const std::vector<NodeRef>& order,
                       Shared& shared, unsigned threads) {
  Verdict verdict;
  Search root(inst, order, shared);
  std::vector<Search> frontier;
  const std::size_t depth = split_depth(inst.network, order, 4 * threads);
  root.collect_frontier(depth, &frontier);
  try {
    if (root.run(0)) return {Status::Sat, root.found(), root.stats()};
  } catch (const BudgetExceeded&) {
    return {Status::BudgetExhausted, std::nullopt, root.stats()};
  }
  verdict.stats = root.take_stats();
  if (frontier.empty()) return verdict;

  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::optional<std::size_t> winner;
  bool budget_hit = false;
  auto worker = [&] {
    for (std::size_t i = next++; i < frontier.size(); i = next++) {
      if (shared.stop.load()) break;
      try {
        if (frontier[i].run(depth)) {
          std::lock_guard lock(mu);
          if (!winner || i < *winner) winner = i;
          shared.stop = true;
        }
      } catch (const BudgetExceeded&) {
        std::lock_guard lock(mu);
        budget_hit = true;
        shared.stop = true;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const auto n = std::min<std::size_t>(threads, frontier.size());
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  for (const Search& s : frontier) verdict.stats += s.stats();
  if (winner) {
    verdict.status = Status::Sat;
    verdict.witness = frontier[*winner].found();
  } else if (budget_hit) {
    verdict.status = Status::BudgetExhausted;
  }
  return verdict;
}

}  // namespace

lp::LpProblem phase_problem(const ReachInstance& inst,
                            const PhaseAssignment& phases, bool with_output) {
  const Network& net = inst.network;
  const std::size_t dim = net.input_dim();
  std::vector<LinearConstraint> rows = inst.input_spec.constraints();
  std::vector<Affine> forms = input_forms(dim);
  bool layer_complete = true;
  for (std::size_t l = 0; l < net.depth(); ++l) {
    const Layer& layer = net.layer(l);
    std::vector<Affine> next(layer.size());
    bool this_complete = true;
    for (std::size_t i = 0; i < layer.size(); ++i) {
      const auto p = phases.piece({l, i});
      if (!p) {
        this_complete = false;
        continue;
      }
      if (!layer_complete) {
        throw InputError("node (" + std::to_string(l) + ", " + std::to_string(i) +
                         ") is assigned but its inputs are not fixed");
      }
      const Affine s = pre_activation(layer, i, forms, dim);
      const Piece& piece = layer.activations[i].pieces()[*p];
      if (auto extra = domain_rows(s, piece)) {
        rows.insert(rows.end(), extra->begin(), extra->end());
      } else {
        rows.push_back({Vector(dim), Comparator::Lt, 0});  // 0 < 0
      }
      next[i] = apply_piece(s, piece);
    }
    forms = std::move(next);
    layer_complete = layer_complete && this_complete;
  }
  if (with_output && layer_complete) {
    if (auto out = output_rows(inst.output_spec, forms, dim)) {
      rows.insert(rows.end(), out->begin(), out->end());
    } else {
      rows.push_back({Vector(dim), Comparator::Lt, 0});
    }
  }
  return lp::LpProblem(dim, std::move(rows));
}

Verdict solve_reach(const ReachInstance& inst, const SolverOptions& opts) {
  const std::vector<NodeRef> order = branching_order(inst.network);
  Shared shared;
  shared.budget = opts.node_budget;
  if (opts.threads > 1) return solve_parallel(inst, order, shared, opts.threads);
  Search search(inst, order, shared);
  try {
    if (search.run(0)) return {Status::Sat, search.found(), search.stats()};
    return {Status::Unsat, std::nullopt, search.stats()};
  } catch (const BudgetExceeded&) {
    return {Status::BudgetExhausted, std::nullopt, search.stats()};
  }
}

VipVerdict solve_vip(const ReachInstance& inst, const SolverOptions& opts) {
  VipVerdict verdict;
  const std::size_t m = inst.network.output_dim();
  for (const LinearConstraint& row : inst.output_spec.constraints()) {
    for (LinearConstraint& neg : negate(row)) {
      SolverOptions sub = opts;
      if (opts.node_budget) {
        if (verdict.stats.nodes_expanded >= *opts.node_budget) {
          verdict.status = VipStatus::BudgetExhausted;
          return verdict;
        }
        sub.node_budget = *opts.node_budget - verdict.stats.nodes_expanded;
      }
      const Verdict v = solve_reach(
          ReachInstance(inst.network, inst.input_spec, LinearSpec(m, {std::move(neg)})),
          sub);
      verdict.stats += v.stats;
      if (v.status == Status::Sat) {
        verdict.status = VipStatus::Violated;
        verdict.counterexample = v.witness;
        return verdict;
      }
      if (v.status == Status::BudgetExhausted) {
        verdict.status = VipStatus::BudgetExhausted;
        return verdict;
      }
    }
  }
  return verdict;
}

NeVerdict solve_ne(const Network& a, const Network& b, const SolverOptions& opts) {
  if (a.input_dim() != b.input_dim() || a.output_dim() != b.output_dim()) {
    throw InputError("networks differ in input or output dimension");
  }
  NeVerdict verdict;
  const Network both = parallel(a, b);
  const std::size_t m = a.output_dim();
  for (std::size_t i = 0; i < m; ++i) {
    for (const int side : {1, -1}) {
      SolverOptions sub = opts;
      if (opts.node_budget) {
        if (verdict.stats.nodes_expanded >= *opts.node_budget) {
          verdict.status = NeStatus::BudgetExhausted;
          return verdict;
        }
        sub.node_budget = *opts.node_budget - verdict.stats.nodes_expanded;
      }
      // side * (y1_i - y2_i) > 0, written as a strict upper bound.
      Vector flipped(2 * m);
      flipped[i] = -side;
      flipped[m + i] = side;
      const Verdict v = solve_reach(
          ReachInstance(both, LinearSpec(a.input_dim()),
                        LinearSpec(2 * m, {{flipped, Comparator::Lt, 0}})),
          sub);
      verdict.stats += v.stats;
      if (v.status == Status::Sat) {
        verdict.status = NeStatus::Distinct;
        verdict.distinguisher = v.witness;
        return verdict;
      }
      if (v.status == Status::BudgetExhausted) {
        verdict.status = NeStatus::BudgetExhausted;
        return verdict;
      }
    }
  }
  return verdict;
}

}  // namespace plreach::reach
