#include "plreach/reductions/eliminate_id.hpp"

#include "plreach/core/errors.hpp"

namespace plreach::reductions {

Vector SignedReadout::read(std::span<const Rational> outputs) const {
  Vector out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    Rational v;
    for (const auto& [idx, s] : t) v += s > 0 ? outputs[idx] : -outputs[idx];
    out.push_back(std::move(v));
  }
  return out;
}

LinearSpec SignedReadout::pull_back(const LinearSpec& spec, std::size_t output_dim) const {
  std::vector<LinearConstraint> rows;
  for (const auto& row : spec.constraints()) {
    Vector a(output_dim);
    for (std::size_t i = 0; i < row.coeffs.size(); ++i) {
      for (const auto& [idx, s] : terms.at(i)) a[idx] += s > 0 ? row.coeffs[i] : -row.coeffs[i];
    }
    rows.push_back({std::move(a), row.cmp, row.rhs});
  }
  return LinearSpec(output_dim, std::move(rows));
}

IdFree eliminate_id(const Network& net) {
  using Copies = std::vector<std::pair<std::size_t, int>>;
  std::vector<Copies> prev(net.input_dim());
  for (std::size_t i = 0; i < prev.size(); ++i) prev[i] = {{i, 1}};
  std::size_t prev_width = net.input_dim();

  std::vector<Layer> layers;
  for (const Layer& layer : net.layers()) {
    std::vector<Vector> rows;
    Vector bias;
    std::vector<Activation> acts;
    std::vector<Copies> next;
    for (std::size_t i = 0; i < layer.size(); ++i) {
      const ActivationKind kind = layer.activations[i].kind();
      if (kind != ActivationKind::Id && kind != ActivationKind::Relu) {
        throw UnsupportedError("only id and relu nodes can be rewritten, found " +
                               std::string(layer.activations[i].name()));
      }
      Vector w(prev_width);
      for (std::size_t j = 0; j < layer.weights.cols(); ++j) {
        const Rational& wij = layer.weights(i, j);
        if (wij.is_zero()) continue;
        for (const auto& [idx, s] : prev[j]) w[idx] += s > 0 ? wij : -wij;
      }
      Copies copies{{rows.size(), 1}};
      rows.push_back(w);
      bias.push_back(layer.bias[i]);
      acts.push_back(Activation::relu());
      if (kind == ActivationKind::Id) {
        for (auto& c : w) c = -c;
        copies.push_back({rows.size(), -1});
        rows.push_back(std::move(w));
        bias.push_back(-layer.bias[i]);
        acts.push_back(Activation::relu());
      }
      next.push_back(std::move(copies));
    }
    layers.push_back({Matrix::from_rows(rows, prev_width), std::move(bias), std::move(acts)});
    prev_width = rows.size();
    prev = std::move(next);
  }
  return {Network(net.input_dim(), std::move(layers)), SignedReadout{std::move(prev)}};
}

ReachInstance eliminate_id(const ReachInstance& inst) {
  IdFree r = eliminate_id(inst.network);
  LinearSpec out = r.readout.pull_back(inst.output_spec, r.net.output_dim());
  return {std::move(r.net), inst.input_spec, std::move(out)};
}

}  // namespace plreach::reductions
