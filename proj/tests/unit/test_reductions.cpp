#include <doctest.h>

#include <algorithm>

#include "builders.hpp"
#include "instances.hpp"
#include "oracles.hpp"
#include "plreach/core/errors.hpp"
#include "plreach/gen/generator.hpp"
#include "plreach/gadgets/encode.hpp"
#include "plreach/reach/solver.hpp"
#include "plreach/reductions/csp_bridge.hpp"
#include "plreach/reductions/eliminate_id.hpp"
#include "plreach/reductions/equivalence.hpp"
#include "plreach/reductions/interval.hpp"
#include "plreach/reductions/receipt.hpp"

using namespace plreach;
using namespace plreach::testing;
using namespace plreach::reductions;
using reach::NeStatus;
using reach::Status;
using reach::VipStatus;

namespace {

bool reach_truth(const ReachInstance& inst) { return oracle::enumerate_reach(inst); }
bool vip_truth(const ReachInstance& inst) { return oracle::vip_holds(inst); }

bool ne_distinct(const Network& a, const Network& b) {
  const auto v = reach::solve_ne(a, b);
  if (v.status == NeStatus::Distinct) {
    REQUIRE(evaluate(a, *v.distinguisher) != evaluate(b, *v.distinguisher));
  }
  return v.status == NeStatus::Distinct;
}

/// Counts FnGraph constraints.
std::size_t graphs(const csp::CspInstance& c) { return c.count<csp::FnGraph>(); }

}  // namespace

TEST_CASE("nnr_to_csp examples") {
  const auto plain = nnr_to_csp({single_node(Activation::id()), spec(1), spec(1)});
  CHECK(graphs(plain.csp) == 0);
  CHECK(plain.csp.count<csp::Mul>() == 0);
  CHECK(plain.inputs.size() == 1);
  CHECK(plain.outputs.size() == 1);

  const auto relu = nnr_to_csp({single_node(Activation::relu()), spec(1), spec(1)});
  REQUIRE(graphs(relu.csp) == 1);
  for (const auto& c : relu.csp.constraints()) {
    if (const auto* g = std::get_if<csp::FnGraph>(&c)) {
      CHECK(std::get<Activation>(g->f) == Activation::relu());
      CHECK(g->v == relu.outputs[0]);
    }
  }

  // The weight-5 coefficient costs at most six constraints over weight 1.
  const auto one = nnr_to_csp({single_node(Activation::id(), 1), spec(1), spec(1)});
  const auto five = nnr_to_csp({single_node(Activation::id(), 5), spec(1), spec(1)});
  const auto extra = five.csp.constraints().size() - one.csp.constraints().size();
  CHECK(extra >= 1);
  CHECK(extra <= 6);
  CHECK(five.csp.count<csp::Const>() == 0);
}

TEST_CASE("nnr_to_csp: solutions carry over exactly") {
  // Any input determines every other variable by propagation.
  gen::Rng rng(5);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const ReachInstance inst = random_instance(s, mixed_set());
    const NnrCsp c = nnr_to_csp(inst);
    for (int t = 0; t < 5; ++t) {
      const Vector x = random_point(rng, inst.network.input_dim());
      csp::Partial known(c.csp.num_vars());
      for (std::size_t i = 0; i < x.size(); ++i) known[c.inputs[i]] = x[i];
      bool consistent = true;
      try {
        known = csp::propagate(c.csp, known);
      } catch (const InputError&) {
        consistent = false;
      }
      const bool ok = check_spec(inst.input_spec, x) &&
                      check_spec(inst.output_spec, evaluate(inst.network, x));
      if (!consistent) {
        REQUIRE_FALSE(ok);
        continue;
      }
      Vector full;
      bool complete = true;
      for (auto& k : known) {
        if (!k) complete = false;
        else full.push_back(*k);
      }
      REQUIRE(complete);
      CHECK(csp::satisfied(c.csp, full) == ok);
      const Vector y = evaluate(inst.network, x);
      for (std::size_t j = 0; j < y.size(); ++j) CHECK(full[c.outputs[j]] == y[j]);
    }
  }
}

TEST_CASE("csp_to_nnr examples") {
  csp::CspInstance c(2);
  c.add(csp::FnGraph{Activation::relu(), 0, 1});
  const ReachInstance r = csp_to_nnr(c);
  REQUIRE(r.network.depth() == 1);
  REQUIRE(r.network.output_dim() == 2);
  CHECK(r.network.layer(0).activations[0] == Activation::relu());
  CHECK(r.network.layer(0).activations[1] == Activation::id());
  REQUIRE(r.output_spec.size() == 1);
  CHECK(r.output_spec.constraints()[0] == eq(vec({1, -1}), 0));
  CHECK(r.input_spec.empty());

  csp::CspInstance lin(3);
  lin.add(csp::One{0});
  lin.add(csp::Plus{0, 0, 1});
  lin.add(csp::Leq{1, 2});
  const ReachInstance l = csp_to_nnr(lin);
  CHECK(l.network.is_linear());
  CHECK(l.input_spec.size() == 3);
  CHECK(l.output_spec.empty());
  const auto v = reach::solve_reach(l);
  REQUIRE(v.status == Status::Sat);
  CHECK(csp::satisfied(lin, *v.witness));

  csp::CspInstance mul(3);
  mul.add(csp::Mul{0, 1, 2});
  CHECK_THROWS_AS(csp_to_nnr(mul), UnsupportedError);
  csp::CspInstance poly(2);
  poly.add(csp::FnGraph{csp::PolyFn{vec({0, 0, 1})}, 0, 1});
  CHECK_THROWS_AS(csp_to_nnr(poly), UnsupportedError);
}

TEST_CASE("property: csp round trip keeps the reach verdict") {
  int sat = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const ReachInstance inst = random_instance(200 + s, mixed_set(), 5);
    const NnrCsp c = nnr_to_csp(inst);
    const ReachInstance back = csp_to_nnr(c.csp);
    const auto v = reach::solve_reach(back);
    const bool truth = reach_truth(inst);
    REQUIRE((v.status == Status::Sat) == truth);
    if (truth) {
      ++sat;
      REQUIRE(csp::satisfied(c.csp, *v.witness));
      Vector x;
      for (auto i : c.inputs) x.push_back((*v.witness)[i]);
      CHECK(check_spec(inst.input_spec, x));
      CHECK(check_spec(inst.output_spec, evaluate(inst.network, x)));
    }
  }
  CHECK(sat > 10);
  CHECK(sat < 90);
}

TEST_CASE("eliminate_id examples") {
  const IdFree single = eliminate_id(single_node(Activation::id()));
  REQUIRE(single.net.node_count() == 2);
  const Layer& l = single.net.layer(0);
  CHECK(l.activations[0] == Activation::relu());
  CHECK(l.activations[1] == Activation::relu());
  CHECK(l.weights(0, 0) == 1);
  CHECK(l.weights(1, 0) == -1);
  CHECK(single.readout.terms[0] == std::vector<std::pair<std::size_t, int>>{{0, 1}, {1, -1}});

  // Inside a net the outgoing weights of the negated copy are negated.
  Layer hidden{Matrix(1, 1), {q("1/2")}, {Activation::id()}};
  hidden.weights(0, 0) = 3;
  Layer out{Matrix(1, 1), {0}, {Activation::relu()}};
  out.weights(0, 0) = 2;
  const IdFree inner = eliminate_id(Network(1, {hidden, out}));
  CHECK(inner.net.layer(0).bias == vec({q("1/2"), q("-1/2")}));
  CHECK(inner.net.layer(1).weights(0, 0) == 2);
  CHECK(inner.net.layer(1).weights(0, 1) == -2);

  const Network pure = relu_pair();
  std::vector<Layer> relus = {pure.layer(0), pure.layer(0)};
  relus[1] = Layer{Matrix(1, 2), {0}, {Activation::relu()}};
  relus[1].weights(0, 0) = 1;
  const Network no_id(1, relus);
  CHECK(eliminate_id(no_id).net == no_id);

  CHECK_THROWS_AS(eliminate_id(single_node(Activation::sign())), UnsupportedError);
}

TEST_CASE("property: eliminate_id is exact and within its size bounds") {
  gen::Rng rng(11);
  const std::vector<Activation> acts = {Activation::id(), Activation::relu()};
  for (std::uint64_t s = 0; s < 100; ++s) {
    gen::GenConfig cfg;
    cfg.seed = 300 + s;
    cfg.activations = acts;
    cfg.input_dim = static_cast<std::size_t>(rng.uniform(1, 3));
    cfg.depth = static_cast<std::size_t>(rng.uniform(1, 4));
    cfg.width = static_cast<std::size_t>(rng.uniform(1, 4));
    cfg.output_dim = static_cast<std::size_t>(rng.uniform(1, 3));
    const Network net = gen::generate(cfg).network;
    const IdFree r = eliminate_id(net);
    REQUIRE(r.net.node_count() <= 2 * net.node_count());
    REQUIRE(r.net.edge_count() <= 4 * net.edge_count());
    for (const auto& layer : r.net.layers()) {
      for (const auto& a : layer.activations) REQUIRE(a == Activation::relu());
    }
    for (int t = 0; t < 100; ++t) {
      const Vector x = random_point(rng, net.input_dim());
      REQUIRE(r.readout.read(evaluate(r.net, x)) == evaluate(net, x));
    }
  }
}

TEST_CASE("property: eliminate_id keeps the reach verdict") {
  const std::vector<Activation> acts = {Activation::id(), Activation::relu()};
  for (std::uint64_t s = 0; s < 100; ++s) {
    const ReachInstance inst = random_instance(400 + s, acts, 4);
    const ReachInstance out = eliminate_id(inst);
    REQUIRE((reach::solve_reach(out).status == Status::Sat) == reach_truth(inst));
  }
}

TEST_CASE("ne_to_connr examples") {
  const Network id = single_node(Activation::id());
  CHECK(reach::solve_reach(ne_to_connr(id, id)).status == Status::Unsat);
  const auto v = reach::solve_reach(ne_to_connr(id, single_node(Activation::relu())));
  REQUIRE(v.status == Status::Sat);
  CHECK((*v.witness)[0] < 0);
  CHECK_THROWS_AS(ne_to_connr(id, Network(2, {identity_layer(2)})), InputError);
  // The shallower net is padded.
  const ReachInstance padded = ne_to_connr(id, relu_pair());
  CHECK(padded.network.depth() == 2 + 4);
}

TEST_CASE("property: ne_to_connr output is 0 or 1 and flags differences") {
  gen::Rng rng(21);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const NetworkPair p = random_pair(s);
    const ReachInstance r = ne_to_connr(p.first, p.second);
    for (int t = 0; t < 50; ++t) {
      const Vector x = random_point(rng, p.first.input_dim());
      const Rational z = evaluate(r.network, x)[0];
      REQUIRE((z == 0 || z == 1));
      CHECK((z == 1) == (evaluate(p.first, x) != evaluate(p.second, x)));
    }
  }
}

TEST_CASE("property: ne_to_connr is Sat exactly for distinct pairs") {
  int distinct = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const NetworkPair p = random_pair(s);
    const bool d = ne_distinct(p.first, p.second);
    REQUIRE(d == !oracle::ne_equivalent(p.first, p.second));
    if (s % 2 == 0) REQUIRE_FALSE(d);
    distinct += d ? 1 : 0;
    REQUIRE((reach::solve_reach(ne_to_connr(p.first, p.second)).status == Status::Sat) == d);
  }
  CHECK(distinct > 30);
}

TEST_CASE("nnr_to_cone examples") {
  const NetworkPair open = nnr_to_cone({single_node(Activation::relu()), spec(1), spec(1)});
  CHECK(ne_distinct(open.first, open.second));

  const NetworkPair closed = nnr_to_cone(
      {single_node(Activation::relu()), spec(1, {le(vec({1}), -1)}), spec(1, {ge(vec({1}), 1)})});
  CHECK_FALSE(ne_distinct(closed.first, closed.second));

  CHECK(constant_minus_one(0, 3).depth() == 3);
  CHECK(evaluate(constant_minus_one(0, 1), Vector{}) == vec({-1}));
  CHECK_THROWS_AS(constant_minus_one(1, 0), InputError);
}

TEST_CASE("property: cone networks compute the advertised indicator") {
  gen::Rng rng(31);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const ReachInstance inst = random_instance(500 + s, mixed_set());
    const NetworkPair p = nnr_to_cone(inst);
    CHECK(p.first.depth() == p.second.depth());
    for (int t = 0; t < 50; ++t) {
      const Vector x = random_point(rng, inst.network.input_dim());
      const bool ok = check_spec(inst.input_spec, x) &&
                      check_spec(inst.output_spec, evaluate(inst.network, x));
      REQUIRE(evaluate(p.first, x) == vec({ok ? 0 : -1}));
      REQUIRE(evaluate(p.second, x) == vec({-1}));
    }
  }
}

TEST_CASE("property: nnr_to_cone is Distinct exactly for Sat instances") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const ReachInstance inst = random_instance(600 + s, mixed_set(), 5);
    const NetworkPair p = nnr_to_cone(inst);
    REQUIRE(ne_distinct(p.first, p.second) == reach_truth(inst));
  }
}

TEST_CASE("vip_to_connr examples") {
  const Network id = single_node(Activation::id());
  const auto two = vip_to_connr({id, spec(1), spec(1, {lt(vec({1}), 1), gt(vec({1}), -1)})});
  REQUIRE(two.size() == 2);
  CHECK(two[0].output_spec.constraints()[0] == ge(vec({1}), 1));
  CHECK(two[1].output_spec.constraints()[0] == le(vec({1}), -1));

  CHECK(vip_to_connr({id, spec(1), spec(1)}).empty());

  const auto one = vip_to_connr(
      {id, spec(1, {ge(vec({1}), 0), le(vec({1}), 1)}), spec(1, {lt(vec({1}), 2)})});
  REQUIRE(one.size() == 1);
  CHECK(one[0].output_spec.constraints()[0] == ge(vec({1}), 2));
  CHECK(reach::solve_reach(one[0]).status == Status::Unsat);
}

TEST_CASE("property: vip_to_connr holds iff every instance is Unsat") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const ReachInstance inst = random_instance(700 + s, mixed_set());
    bool all_unsat = true;
    for (const auto& r : vip_to_connr(inst)) all_unsat = all_unsat && !reach_truth(r);
    REQUIRE((reach::solve_vip(inst).status == VipStatus::Holds) == all_unsat);
  }
}

TEST_CASE("nnr_to_covip examples") {
  const Network id = single_node(Activation::id());
  const ReachInstance unsat{id, spec(1, {ge(vec({1}), 1)}), spec(1, {le(vec({1}), 0)})};
  for (auto v : {CovipVariant::Heaviside, CovipVariant::Sign, CovipVariant::Relu}) {
    CHECK(reach::solve_vip(nnr_to_covip(unsat, v)).status == VipStatus::Holds);
  }
  // H(0) = 1: the boundary point of y <= 1 counts as inside.
  const ReachInstance h = nnr_to_covip({id, spec(1), spec(1, {le(vec({1}), 1)})},
                                       CovipVariant::Heaviside);
  CHECK(evaluate(h.network, vec({1})) == vec({1}));
  CHECK(evaluate(h.network, vec({q("3/2")})) == vec({0}));

  const ReachInstance r = nnr_to_covip({id, spec(1), spec(1, {le(vec({1}), 1), ge(vec({1}), -1)})},
                                       CovipVariant::Relu);
  CHECK(evaluate(r.network, vec({q("1/2")})) == vec({0}));
  CHECK(evaluate(r.network, vec({3})) == vec({2}));
  CHECK_THROWS_AS(nnr_to_covip({id, spec(1), spec(1, {lt(vec({1}), 1)})}, CovipVariant::Relu),
                  UnsupportedError);

  const ActivationKind hs[] = {ActivationKind::Relu, ActivationKind::Heaviside};
  CHECK(covip_variant(hs) == CovipVariant::Heaviside);
  const ActivationKind sg[] = {ActivationKind::Sign, ActivationKind::Relu};
  CHECK(covip_variant(sg) == CovipVariant::Sign);
  const ActivationKind rl[] = {ActivationKind::Id, ActivationKind::Relu};
  CHECK(covip_variant(rl) == CovipVariant::Relu);
  const ActivationKind none[] = {ActivationKind::Id, ActivationKind::Abs};
  CHECK_THROWS_AS(covip_variant(none), UnsupportedError);
}

TEST_CASE("property: covip flags are confined to their ranges") {
  gen::Rng rng(41);
  for (std::uint64_t s = 0; s < 20; ++s) {
    ReachInstance inst = random_instance(800 + s, mixed_set());
    for (auto v : {CovipVariant::Heaviside, CovipVariant::Sign}) {
      const ReachInstance c = nnr_to_covip(inst, v);
      for (int t = 0; t < 25; ++t) {
        const Vector x = random_point(rng, inst.network.input_dim());
        const bool out_ok = check_spec(inst.output_spec, evaluate(inst.network, x));
        REQUIRE(evaluate(c.network, x) == vec({out_ok ? 1 : 0}));
      }
    }
    // Relu: zero exactly on the closed output region.
    std::vector<LinearConstraint> closed;
    for (auto row : inst.output_spec.constraints()) {
      if (row.cmp == Comparator::Lt) row.cmp = Comparator::Le;
      closed.push_back(row);
    }
    inst.output_spec = LinearSpec(inst.network.output_dim(), closed);
    const ReachInstance c = nnr_to_covip(inst, CovipVariant::Relu);
    for (int t = 0; t < 25; ++t) {
      const Vector x = random_point(rng, inst.network.input_dim());
      const bool out_ok = check_spec(inst.output_spec, evaluate(inst.network, x));
      const Rational y = evaluate(c.network, x)[0];
      REQUIRE(y >= 0);
      REQUIRE((y == 0) == out_ok);
    }
  }
}

TEST_CASE("property: nnr_to_covip fails exactly for Sat instances") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    ReachInstance inst = random_instance(900 + s, mixed_set(), 5);
    const bool truth = reach_truth(inst);
    for (auto v : {CovipVariant::Heaviside, CovipVariant::Sign}) {
      REQUIRE((reach::solve_vip(nnr_to_covip(inst, v)).status == VipStatus::Violated) == truth);
    }
    std::vector<LinearConstraint> closed;
    for (auto row : inst.output_spec.constraints()) {
      if (row.cmp == Comparator::Lt) row.cmp = Comparator::Le;
      closed.push_back(row);
    }
    inst.output_spec = LinearSpec(inst.network.output_dim(), closed);
    REQUIRE((reach::solve_vip(nnr_to_covip(inst, CovipVariant::Relu)).status ==
             VipStatus::Violated) == reach_truth(inst));
  }
}

TEST_CASE("vip_to_ne examples") {
  const Network id = single_node(Activation::id());
  const ReachInstance holds{id, spec(1, {ge(vec({1}), 0), le(vec({1}), 1)}),
                            spec(1, {lt(vec({1}), 2)})};
  const NetworkPair h = vip_to_ne(holds);
  CHECK_FALSE(ne_distinct(h.first, h.second));

  const ReachInstance violated{id, spec(1, {ge(vec({1}), 0), le(vec({1}), 1)}),
                               spec(1, {lt(vec({1}), 1)})};
  const NetworkPair v = vip_to_ne(violated);
  const auto d = reach::solve_ne(v.first, v.second);
  REQUIRE(d.status == NeStatus::Distinct);
  CHECK((*d.distinguisher)[0] == 1);

  gen::Rng rng(51);
  for (int t = 0; t < 1000; ++t) {
    CHECK(evaluate(v.second, random_point(rng, 1)) == vec({-1}));
  }
}

TEST_CASE("property: vip_to_ne computes the violation indicator") {
  gen::Rng rng(61);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const ReachInstance inst = random_instance(1000 + s, mixed_set());
    const NetworkPair p = vip_to_ne(inst);
    for (int t = 0; t < 50; ++t) {
      const Vector x = random_point(rng, inst.network.input_dim());
      const bool bad = check_spec(inst.input_spec, x) &&
                       !check_spec(inst.output_spec, evaluate(inst.network, x));
      REQUIRE(evaluate(p.first, x) == vec({bad ? 1 : -1}));
    }
  }
}

TEST_CASE("property: vip_to_ne is Distinct exactly when the property fails") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const ReachInstance inst = random_instance(1100 + s, mixed_set(), 5);
    const NetworkPair p = vip_to_ne(inst);
    REQUIRE(ne_distinct(p.first, p.second) == !vip_truth(inst));
  }
}

TEST_CASE("property: ne_to_vip holds exactly for equivalent pairs") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const NetworkPair p = random_pair(s + 7);
    const bool d = ne_distinct(p.first, p.second);
    for (auto v : {CovipVariant::Heaviside, CovipVariant::Sign}) {
      REQUIRE((reach::solve_vip(ne_to_vip(p.first, p.second, v)).status ==
               VipStatus::Violated) == d);
    }
  }
}

TEST_CASE("to_single_output examples") {
  gen::GenConfig cfg;
  cfg.output_dim = 3;
  cfg.output_constraints = 4;
  const ReachInstance inst = gen::generate(cfg);
  const auto pairs = to_single_output(NetworkPair{inst.network, inst.network});
  REQUIRE(pairs.size() == 3);
  for (const auto& p : pairs) CHECK(p.first.output_dim() == 1);
  const auto vips = to_single_output(inst);
  REQUIRE(vips.size() == 4);
  for (const auto& v : vips) CHECK(v.output_spec.size() == 1);

  cfg.output_dim = 1;
  cfg.output_constraints = 1;
  const ReachInstance single = gen::generate(cfg);
  const auto same = to_single_output(NetworkPair{single.network, single.network});
  REQUIRE(same.size() == 1);
  CHECK(same[0].first == single.network);
  const auto one = to_single_output(single);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == single);
}

TEST_CASE("property: single-output answers combine to the full answer") {
  for (std::uint64_t s = 0; s < 40; ++s) {
    const NetworkPair p = random_pair(s + 3);
    bool all_equal = true;
    for (const auto& sub : to_single_output(p)) {
      all_equal = all_equal && !ne_distinct(sub.first, sub.second);
    }
    REQUIRE(all_equal == !ne_distinct(p.first, p.second));

    const ReachInstance inst = random_instance(1200 + s, mixed_set());
    bool all_hold = true;
    for (const auto& sub : to_single_output(inst)) all_hold = all_hold && vip_truth(sub);
    REQUIRE(all_hold == vip_truth(inst));
  }
}

TEST_CASE("receipts stay within their pinned bounds") {
  struct Worst {
    double ratio = 0;
    void see(const ReductionReceipt& r) {
      ratio = std::max(ratio, double(r.output_size) / double(r.input_size));
      REQUIRE(r.within_bound());
    }
  };
  Worst to_csp, from_csp, elim, cone, covip, vip_ne, connr, ne_vip;
  const std::vector<Activation> ids = {Activation::id(), Activation::relu()};
  for (std::uint64_t s = 0; s < 100; ++s) {
    const ReachInstance inst = random_instance(1300 + s, mixed_set());
    const NnrCsp c = nnr_to_csp(inst);
    to_csp.see(make_receipt(Reduction::NnrToCsp, size_of(inst), size_of(c.csp)));
    from_csp.see(make_receipt(Reduction::CspToNnr, size_of(c.csp), size_of(csp_to_nnr(c.csp))));
    const ReachInstance lin = random_instance(1400 + s, ids);
    elim.see(make_receipt(Reduction::EliminateId, size_of(lin), size_of(eliminate_id(lin))));
    cone.see(make_receipt(Reduction::NnrToCone, size_of(inst), size_of(nnr_to_cone(inst))));
    covip.see(make_receipt(Reduction::NnrToCovip, size_of(inst),
                           size_of(nnr_to_covip(inst, CovipVariant::Sign))));
    vip_ne.see(make_receipt(Reduction::VipToNe, size_of(inst), size_of(vip_to_ne(inst))));
    for (const auto& r : vip_to_connr(inst)) {
      connr.see(make_receipt(Reduction::VipToConnr, size_of(inst), size_of(r)));
    }
    const NetworkPair p = random_pair(s);
    ne_vip.see(make_receipt(Reduction::NeToVip, size_of(p),
                            size_of(ne_to_vip(p.first, p.second))));
    ne_vip.see(make_receipt(Reduction::NeToConnr, size_of(p),
                            size_of(ne_to_connr(p.first, p.second))));
  }
  MESSAGE("worst ratios: nnr->csp " << to_csp.ratio << ", csp->nnr " << from_csp.ratio
                                    << ", eliminate-id " << elim.ratio << ", cone " << cone.ratio
                                    << ", covip " << covip.ratio << ", vip->ne " << vip_ne.ratio
                                    << ", vip->connr " << connr.ratio << ", ne->vip "
                                    << ne_vip.ratio);
  const auto j = make_receipt(Reduction::NnrToCsp, 10, 20).to_json();
  CHECK(j["reduction"] == "nnr-to-csp");
  CHECK(j["within_bound"] == true);
  CHECK_FALSE(make_receipt(Reduction::EliminateId, 10, 41).within_bound());
}

TEST_CASE("the 1024 encoding solves through the network bridge") {
  csp::CspInstance c(1);
  gadgets::encode_integer(c, 1024, 0);
  const ReachInstance r = csp_to_nnr(c);
  const auto v = reach::solve_reach(r);
  REQUIRE(v.status == Status::Sat);
  CHECK((*v.witness)[0] == 1024);
  CHECK(v.stats.lp_calls == 1);
}

TEST_CASE("a rational coefficient survives the round trip") {
  const Network net = single_node(Activation::id(), q("-7/3"));
  const ReachInstance inst{net, spec(1, {eq(vec({1}), 3)}), spec(1)};
  const NnrCsp c = nnr_to_csp(inst);
  const auto v = reach::solve_reach(csp_to_nnr(c.csp));
  REQUIRE(v.status == Status::Sat);
  CHECK((*v.witness)[c.inputs[0]] == 3);
  CHECK((*v.witness)[c.outputs[0]] == -7);
}

TEST_CASE("receipts hold on extreme shapes") {
  // Graph-only constraint instances are the costliest per unit for the bridge back.
  csp::CspInstance graphs_only(40);
  for (csp::Var v = 0; v + 1 < 40; v += 2) {
    graphs_only.add(csp::FnGraph{Activation::relu(), v, v + 1});
  }
  const auto back = make_receipt(Reduction::CspToNnr, size_of(graphs_only),
                                 size_of(csp_to_nnr(graphs_only)));
  CHECK(back.within_bound());

  gen::GenConfig cfg;
  cfg.max_numerator = (std::int64_t{1} << 40) - 1;
  cfg.max_denominator = (std::int64_t{1} << 20) - 1;
  cfg.activations = {Activation::relu(), Activation::id()};
  for (std::uint64_t s = 0; s < 3; ++s) {
    cfg.seed = s;
    const ReachInstance inst = gen::generate(cfg);
    const NnrCsp c = nnr_to_csp(inst);
    CHECK(make_receipt(Reduction::NnrToCsp, size_of(inst), size_of(c.csp)).within_bound());
    CHECK(make_receipt(Reduction::CspToNnr, size_of(c.csp), size_of(csp_to_nnr(c.csp)))
              .within_bound());
    CHECK(make_receipt(Reduction::EliminateId, size_of(inst), size_of(eliminate_id(inst)))
              .within_bound());
  }
}
