#include <doctest.h>

#include "builders.hpp"
#include "oracles.hpp"
#include "plreach/core/errors.hpp"
#include "plreach/gen/generator.hpp"
#include "plreach/reach/solver.hpp"

using namespace plreach;
using namespace plreach::testing;
using reach::NeStatus;
using reach::Status;
using reach::VipStatus;

namespace {

bool valid_witness(const ReachInstance& inst, const Vector& x) {
  return check_spec(inst.input_spec, x) &&
         check_spec(inst.output_spec, evaluate(inst.network, x));
}

bool violates(const ReachInstance& inst, const Vector& x) {
  return check_spec(inst.input_spec, x) &&
         !check_spec(inst.output_spec, evaluate(inst.network, x));
}

const std::vector<Activation>& mixed_set() {
  static const std::vector<Activation> acts = {
      Activation::id(),        Activation::relu(), Activation::leaky_relu(q("1/2")),
      Activation::heaviside(), Activation::sign(), Activation::abs()};
  return acts;
}

}  // namespace

TEST_CASE("solve_reach examples") {
  const Network relu = single_node(Activation::relu());
  const auto unsat = reach::solve_reach(
      ReachInstance(relu, spec(1, {le(vec({1}), -1)}), spec(1, {ge(vec({1}), 1)})));
  CHECK(unsat.status == Status::Unsat);
  CHECK_FALSE(unsat.witness);

  const ReachInstance sat_inst(relu, spec(1, {le(vec({1}), -1)}), spec(1, {le(vec({1}), 0)}));
  const auto sat = reach::solve_reach(sat_inst);
  REQUIRE(sat.status == Status::Sat);
  CHECK(valid_witness(sat_inst, *sat.witness));
}

TEST_CASE("solve_reach on strict and point pieces") {
  // sign(x) = 0 forces x = 0 exactly.
  const ReachInstance zero(single_node(Activation::sign()), spec(1),
                           spec(1, {eq(vec({1}), 0)}));
  const auto v = reach::solve_reach(zero);
  REQUIRE(v.status == Status::Sat);
  CHECK(*v.witness == vec({0}));
  // H(x) = 0 with x >= 0 is impossible (H(0) = 1).
  CHECK(reach::solve_reach(ReachInstance(single_node(Activation::heaviside()),
                                         spec(1, {ge(vec({1}), 0)}),
                                         spec(1, {eq(vec({1}), 0)})))
            .status == Status::Unsat);
  // H(x) = 0 with x > -1/100 needs x in (-1/100, 0).
  const ReachInstance thin(single_node(Activation::heaviside()),
                           spec(1, {gt(vec({1}), q("-1/100"))}), spec(1, {eq(vec({1}), 0)}));
  const auto t = reach::solve_reach(thin);
  REQUIRE(t.status == Status::Sat);
  CHECK(valid_witness(thin, *t.witness));
}

TEST_CASE("branching order puts wide pieces first within a layer") {
  Layer l0{Matrix(3, 1), {0, 0, 0},
           {Activation::relu(), Activation::sign(), Activation::id()}};
  Layer l1{Matrix(1, 3), {0}, {Activation::abs()}};
  const auto order = reach::branching_order(Network(1, {l0, l1}));
  REQUIRE(order.size() == 4);
  CHECK(order[0] == reach::NodeRef{0, 1});
  CHECK(order[1] == reach::NodeRef{0, 0});
  CHECK(order[2] == reach::NodeRef{0, 2});
  CHECK(order[3] == reach::NodeRef{1, 0});
}

TEST_CASE("phase assignment validates indices") {
  reach::PhaseAssignment p(relu_pair());
  CHECK_THROWS_AS(p.assign({0, 0}, 2), InputError);
  CHECK_THROWS_AS(p.assign({0, 2}, 0), InputError);
  CHECK_THROWS_AS(p.assign({2, 0}, 0), InputError);
  p.assign({0, 0}, 1);
  CHECK(p.piece({0, 0}) == 1u);
  CHECK_FALSE(p.complete());
  p.assign({0, 1}, 0);
  p.assign({1, 0}, 0);
  CHECK(p.complete());
  CHECK(p.assigned_count() == 3);
  reach::PhaseAssignment skip(relu_pair());
  skip.assign({1, 0}, 0);
  const ReachInstance inst(relu_pair(), spec(1), spec(1));
  CHECK_THROWS_AS(reach::phase_problem(inst, skip, false), InputError);
}

TEST_CASE("property: verdict matches phase enumeration on 2-2-1 relu nets") {
  gen::GenConfig cfg;
  cfg.input_dim = 2;
  cfg.depth = 2;
  cfg.width = 2;
  int sat = 0;
  for (std::uint64_t s = 0; s < 150; ++s) {
    cfg.seed = s;
    const ReachInstance inst = gen::generate(cfg);
    const auto v = reach::solve_reach(inst);
    REQUIRE((v.status == Status::Sat) == oracle::enumerate_reach(inst));
    if (v.status == Status::Sat) {
      ++sat;
      REQUIRE(valid_witness(inst, *v.witness));
    }
  }
  CHECK(sat > 10);
  CHECK(sat < 140);
}

TEST_CASE("property: verdict matches phase enumeration on mixed activations") {
  gen::GenConfig cfg;
  cfg.activations = mixed_set();
  gen::Rng shape(17);
  int sat = 0;
  for (std::uint64_t s = 0; s < 120; ++s) {
    cfg.seed = 1000 + s;
    cfg.input_dim = static_cast<std::size_t>(shape.uniform(1, 3));
    cfg.depth = static_cast<std::size_t>(shape.uniform(1, 3));
    cfg.width = static_cast<std::size_t>(shape.uniform(1, 3));
    cfg.output_dim = static_cast<std::size_t>(shape.uniform(1, 2));
    cfg.input_constraints = static_cast<std::size_t>(shape.uniform(0, 3));
    cfg.output_constraints = static_cast<std::size_t>(shape.uniform(1, 2));
    const ReachInstance inst = gen::generate(cfg);
    if (inst.network.node_count() > 8) continue;
    const auto v = reach::solve_reach(inst);
    REQUIRE((v.status == Status::Sat) == oracle::enumerate_reach(inst));
    if (v.status == Status::Sat) {
      ++sat;
      REQUIRE(valid_witness(inst, *v.witness));
    }
  }
  CHECK(sat > 10);
}

TEST_CASE("property: infeasible partial assignments have no satisfiable completion") {
  gen::GenConfig cfg;
  cfg.activations = mixed_set();
  cfg.depth = 2;
  cfg.width = 2;
  cfg.input_dim = 2;
  int pruned = 0;
  for (std::uint64_t s = 0; s < 40; ++s) {
    cfg.seed = 500 + s;
    const ReachInstance inst = gen::generate(cfg);
    const auto order = reach::branching_order(inst.network);
    // Every prefix of every complete pattern, taken along the branching order.
    oracle::for_each_pattern(inst.network, [&](const std::vector<std::size_t>& pattern) {
      std::vector<std::size_t> flat_offset;
      std::size_t off = 0;
      for (const auto& layer : inst.network.layers()) {
        flat_offset.push_back(off);
        off += layer.size();
      }
      reach::PhaseAssignment partial(inst.network);
      for (std::size_t d = 0; d < order.size(); ++d) {
        const auto n = order[d];
        partial.assign(n, pattern[flat_offset[n.layer] + n.node]);
        if (!lp::feasible(reach::phase_problem(inst, partial, false)).feasible()) {
          ++pruned;
          REQUIRE_FALSE(oracle::pattern_feasible(inst, pattern, true));
          break;
        }
      }
      return true;
    });
  }
  CHECK(pruned > 0);
}

TEST_CASE("pure identity networks use exactly one LP call") {
  gen::GenConfig cfg;
  cfg.activations = {Activation::id()};
  cfg.depth = 3;
  cfg.width = 3;
  for (std::uint64_t s = 0; s < 30; ++s) {
    cfg.seed = s;
    const auto v = reach::solve_reach(gen::generate(cfg));
    CHECK(v.stats.lp_calls == 1);
  }
  const auto empty = reach::solve_reach(
      ReachInstance(single_node(Activation::id()), spec(1), spec(1)));
  CHECK(empty.status == Status::Sat);
  CHECK(empty.stats.lp_calls == 1);
}

TEST_CASE("budget exhaustion is reported, never a wrong verdict") {
  gen::GenConfig cfg;
  cfg.depth = 3;
  cfg.width = 4;
  cfg.seed = 3;
  const ReachInstance inst = gen::generate(cfg);
  reach::SolverOptions opts;
  opts.node_budget = 2;
  const auto v = reach::solve_reach(inst, opts);
  CHECK(v.status == Status::BudgetExhausted);
  CHECK_FALSE(v.witness);
  opts.node_budget = 1'000'000;
  CHECK(reach::solve_reach(inst, opts).status == reach::solve_reach(inst).status);
}

TEST_CASE("parallel search returns the same status") {
  gen::GenConfig cfg;
  cfg.activations = mixed_set();
  cfg.depth = 3;
  cfg.width = 3;
  reach::SolverOptions par;
  par.threads = 4;
  for (std::uint64_t s = 0; s < 40; ++s) {
    cfg.seed = 77 + s;
    cfg.planted = s % 2 == 0;
    const ReachInstance inst = gen::generate(cfg);
    const auto a = reach::solve_reach(inst);
    const auto b = reach::solve_reach(inst, par);
    REQUIRE(a.status == b.status);
    if (b.status == Status::Sat) REQUIRE(valid_witness(inst, *b.witness));
  }
  par.node_budget = 3;
  cfg.seed = 1;
  cfg.planted = false;
  cfg.width = 4;
  cfg.activations = {Activation::relu()};
  CHECK(reach::solve_reach(gen::generate(cfg), par).status == Status::BudgetExhausted);
}

TEST_CASE("negation of output rows") {
  const auto le_neg = reach::negate(le(vec({1}), 1));
  REQUIRE(le_neg.size() == 1);
  CHECK(le_neg[0] == gt(vec({1}), 1));
  CHECK(reach::negate(lt(vec({1}), 1))[0] == ge(vec({1}), 1));
  const auto eq_neg = reach::negate(eq(vec({1}), 1));
  REQUIRE(eq_neg.size() == 2);
  CHECK(eq_neg[0] == lt(vec({1}), 1));
  CHECK(eq_neg[1] == gt(vec({1}), 1));
}

TEST_CASE("solve_vip examples") {
  const Network id = single_node(Activation::id());
  const LinearSpec unit_box = spec(1, {ge(vec({1}), 0), le(vec({1}), 1)});
  CHECK(reach::solve_vip(ReachInstance(id, unit_box,
                                       spec(1, {gt(vec({1}), -1), lt(vec({1}), 2)})))
            .status == VipStatus::Holds);

  const ReachInstance violated(id, unit_box, spec(1, {lt(vec({1}), 1)}));
  const auto v = reach::solve_vip(violated);
  REQUIRE(v.status == VipStatus::Violated);
  CHECK(*v.counterexample == vec({1}));

  CHECK(reach::solve_vip(ReachInstance(single_node(Activation::relu()),
                                       spec(1, {le(vec({1}), 0)}),
                                       spec(1, {gt(vec({1}), -1), lt(vec({1}), 1)})))
            .status == VipStatus::Holds);
  CHECK(reach::solve_vip(ReachInstance(id, unit_box, spec(1))).status == VipStatus::Holds);
}

TEST_CASE("property: sampled counterexamples force Violated") {
  gen::GenConfig cfg;
  cfg.activations = mixed_set();
  cfg.input_dim = 1;
  cfg.depth = 2;
  cfg.width = 2;
  cfg.output_constraints = 2;
  gen::Rng rng(8);
  int violated = 0;
  for (std::uint64_t s = 0; s < 60; ++s) {
    cfg.seed = 300 + s;
    const ReachInstance inst = gen::generate(cfg);
    const auto v = reach::solve_vip(inst);
    if (v.status == VipStatus::Violated) {
      ++violated;
      REQUIRE(violates(inst, *v.counterexample));
    }
    bool sampled = false;
    for (int k = 0; k < 200 && !sampled; ++k) {
      const Vector x = {rng.rational(12, 6)};
      sampled = violates(inst, x);
    }
    if (sampled) REQUIRE(v.status == VipStatus::Violated);
    // Holds must agree with every negated row being unreachable.
    bool all_unsat = true;
    for (const auto& row : inst.output_spec.constraints()) {
      for (const auto& neg : reach::negate(row)) {
        const ReachInstance sub(inst.network, inst.input_spec, spec(1, {neg}));
        all_unsat = all_unsat && !oracle::enumerate_reach(sub);
      }
    }
    REQUIRE((v.status == VipStatus::Holds) == all_unsat);
  }
  CHECK(violated > 5);
}

TEST_CASE("solve_ne examples") {
  const Network id = single_node(Activation::id());
  CHECK(reach::solve_ne(id, relu_pair()).status == NeStatus::Equivalent);
  const auto d = reach::solve_ne(single_node(Activation::relu()), id);
  REQUIRE(d.status == NeStatus::Distinct);
  CHECK((*d.distinguisher)[0] < 0);
  gen::GenConfig cfg;
  cfg.activations = mixed_set();
  cfg.output_dim = 2;
  for (std::uint64_t s = 0; s < 20; ++s) {
    cfg.seed = s;
    const Network n = gen::generate(cfg).network;
    CHECK(reach::solve_ne(n, n).status == NeStatus::Equivalent);
  }
  CHECK_THROWS_AS(reach::solve_ne(id, gen::generate(cfg).network), InputError);
}

TEST_CASE("property: distinguishers separate the networks") {
  gen::GenConfig cfg;
  cfg.activations = mixed_set();
  cfg.output_dim = 2;
  int distinct = 0;
  for (std::uint64_t s = 0; s < 30; ++s) {
    cfg.seed = 900 + s;
    const Network a = gen::generate(cfg).network;
    cfg.seed = 1900 + s;
    const Network b = gen::generate(cfg).network;
    const auto v = reach::solve_ne(a, b);
    if (v.status == NeStatus::Distinct) {
      ++distinct;
      REQUIRE(evaluate(a, *v.distinguisher) != evaluate(b, *v.distinguisher));
    }
  }
  CHECK(distinct > 20);
}
