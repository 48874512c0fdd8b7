#include "plreach/reductions/csp_bridge.hpp"

#include <utility>

#include "plreach/core/errors.hpp"
#include "plreach/gadgets/encode.hpp"

namespace plreach::reductions {

using csp::CspInstance;
using csp::Var;

namespace {

class Writer {
 public:
  explicit Writer(CspInstance& c) : csp_(c) {
    one_ = c.fresh();
    gadgets::encode_integer(c, 1, one_);
    zero_ = gadgets::make_zero(c);
  }

  [[nodiscard]] Var zero() const { return zero_; }

  /// target = sum coeff_i * vars_i + constant
  void linear(std::span<const Rational> coeffs, std::span<const Var> vars,
              const Rational& constant, Var target) {
    std::vector<Var> parts;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (coeffs[i].is_zero()) continue;
      if (coeffs[i] == 1) {
        parts.push_back(vars[i]);
        continue;
      }
      const Var t = csp_.fresh();
      gadgets::encode_rational_coefficient(csp_, coeffs[i], vars[i], t, zero_);
      parts.push_back(t);
    }
    if (!constant.is_zero()) parts.push_back(scaled_one(constant));
    if (parts.empty()) {
      csp_.add(csp::Plus{target, zero_, zero_});
      return;
    }
    if (parts.size() == 1) {
      csp_.add(csp::Plus{parts[0], zero_, target});
      return;
    }
    Var acc = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) {
      const Var next = i + 1 == parts.size() ? target : csp_.fresh();
      csp_.add(csp::Plus{acc, parts[i], next});
      acc = next;
    }
  }

  /// A variable forced to q.
  Var scaled_one(const Rational& q) {
    if (q.is_zero()) return zero_;
    if (q == 1) return one_;
    const Var t = csp_.fresh();
    gadgets::encode_rational_coefficient(csp_, q, one_, t, zero_);
    return t;
  }

  void row(const LinearConstraint& r, std::span<const Var> vars) {
    const Var lhs = csp_.fresh();
    linear(r.coeffs, vars, 0, lhs);
    const Var rhs = scaled_one(r.rhs);
    switch (r.cmp) {
      case Comparator::Le:
        csp_.add(csp::Leq{lhs, rhs});
        break;
      case Comparator::Eq:
        csp_.add(csp::Plus{lhs, zero_, rhs});
        break;
      case Comparator::Lt: {
        // lhs < rhs  iff  H(lhs - rhs) = 0
        const Var diff = csp_.fresh();
        csp_.add(csp::Plus{diff, rhs, lhs});
        csp_.add(csp::FnGraph{Activation::heaviside(), diff, zero_});
        break;
      }
    }
  }

 private:
  CspInstance& csp_;
  Var one_ = 0;
  Var zero_ = 0;
};

}  // namespace

NnrCsp nnr_to_csp(const ReachInstance& inst) {
  const Network& net = inst.network;
  NnrCsp out{CspInstance(net.input_dim()), {}, {}};
  for (Var v = 0; v < net.input_dim(); ++v) out.inputs.push_back(v);
  Writer w(out.csp);
  for (const auto& r : inst.input_spec.constraints()) w.row(r, out.inputs);

  std::vector<Var> prev = out.inputs;
  for (std::size_t l = 0; l < net.depth(); ++l) {
    const Layer& layer = net.layer(l);
    const bool is_output = l + 1 == net.depth();
    std::vector<Var> values;
    for (std::size_t i = 0; i < layer.size(); ++i) {
      const Activation& act = layer.activations[i];
      const bool id = act.kind() == ActivationKind::Id;
      if (is_output && id) {
        const Var y = out.csp.fresh();
        w.linear(layer.weights.row(i), prev, layer.bias[i], y);
        values.push_back(y);
        continue;
      }
      const Var sum = out.csp.fresh();
      const Var f = out.csp.fresh();
      w.linear(layer.weights.row(i), prev, layer.bias[i], sum);
      if (id) {
        out.csp.add(csp::Plus{sum, w.zero(), f});
      } else {
        out.csp.add(csp::FnGraph{act, sum, f});
      }
      values.push_back(f);
    }
    prev = std::move(values);
  }
  out.outputs = prev;
  for (const auto& r : inst.output_spec.constraints()) w.row(r, out.outputs);
  return out;
}

ReachInstance csp_to_nnr(const CspInstance& c) {
  const std::size_t n = c.num_vars();
  std::vector<LinearConstraint> in_rows;
  std::vector<csp::FnGraph> graphs;
  auto row = [&](std::vector<std::pair<Var, Rational>> terms, Comparator cmp,
                 const Rational& rhs) {
    Vector a(n);
    for (const auto& [v, coeff] : terms) a[v] += coeff;
    in_rows.push_back({std::move(a), cmp, rhs});
  };
  for (const auto& k : c.constraints()) {
    if (const auto* p = std::get_if<csp::Leq>(&k)) {
      row({{p->u, 1}, {p->v, -1}}, Comparator::Le, 0);
    } else if (const auto* p = std::get_if<csp::Plus>(&k)) {
      row({{p->u, 1}, {p->v, 1}, {p->w, -1}}, Comparator::Eq, 0);
    } else if (const auto* p = std::get_if<csp::One>(&k)) {
      row({{p->u, 1}}, Comparator::Eq, 1);
    } else if (const auto* p = std::get_if<csp::Const>(&k)) {
      row({{p->u, 1}}, Comparator::Eq, p->value);
    } else if (const auto* p = std::get_if<csp::FnGraph>(&k)) {
      if (!std::holds_alternative<Activation>(p->f)) {
        throw UnsupportedError("polynomial graphs have no piecewise-linear network: " +
                               csp::describe(k));
      }
      graphs.push_back(*p);
    } else {
      throw UnsupportedError("multiplication has no piecewise-linear network: " +
                             csp::describe(k));
    }
  }
  LinearSpec input_spec(n, std::move(in_rows));
  if (graphs.empty()) {
    return {Network(n, {identity_layer(n)}), std::move(input_spec), LinearSpec(n)};
  }
  const std::size_t width = 2 * graphs.size();
  Layer layer{Matrix(width, n), Vector(width), {}};
  std::vector<LinearConstraint> out_rows;
  for (std::size_t g = 0; g < graphs.size(); ++g) {
    layer.weights(2 * g, graphs[g].u) = 1;
    layer.activations.push_back(std::get<Activation>(graphs[g].f));
    layer.weights(2 * g + 1, graphs[g].v) = 1;
    layer.activations.push_back(Activation::id());
    Vector a(width);
    a[2 * g] = 1;
    a[2 * g + 1] = -1;
    out_rows.push_back({std::move(a), Comparator::Eq, 0});
  }
  return {Network(n, {std::move(layer)}), std::move(input_spec),
          LinearSpec(width, std::move(out_rows))};
}

}  // namespace plreach::reductions
