#include "plreach/reductions/equivalence.hpp"

#include <algorithm>

#include "builder.hpp"
#include "plreach/core/errors.hpp"

namespace plreach::reductions {

using detail::GeRow;
using detail::LayerBuilder;

namespace {

const Rational half(1, 2);

/// Checks the input rows next to the network: sigma_k = sign(a_k.x - r_k),
/// then lambda_k = sign(sigma_k + 1/2) (- 1/2 when strict), then
/// sign(sum lambda - l), which is 0 when every row holds and -1 otherwise;
/// sign nodes carry that value on, since sign fixes 0 and -1.
class InputPath {
 public:
  InputPath(const LinearSpec& spec, std::size_t input_dim) : rows_(detail::ge_rows(spec)) {
    if (rows_.empty()) rows_.push_back({Vector(input_dim), 0, false});
  }

  /// Adds this stage's nodes to `b`, reading the previous stage at `at_`.
  void advance(LayerBuilder& b) {
    std::vector<std::size_t> next;
    if (stage_ == 0) {
      for (const auto& row : rows_) next.push_back(b.add(row.a, -row.r, Activation::sign()));
    } else if (stage_ == 1) {
      for (std::size_t k = 0; k < rows_.size(); ++k) {
        next.push_back(b.add_unit(at_[k], rows_[k].strict ? -half : half, Activation::sign()));
      }
    } else if (stage_ == 2) {
      Vector w;
      for (std::size_t k : at_) {
        w.resize(std::max(w.size(), k + 1));
        w[k] = 1;
      }
      next.push_back(b.add(std::move(w), -Rational(static_cast<long>(rows_.size())),
                           Activation::sign()));
    } else {
      next.push_back(b.add_unit(at_[0], 0, Activation::sign()));
    }
    at_ = std::move(next);
    ++stage_;
  }

  /// Position of the carried value in the last layer built.
  [[nodiscard]] std::size_t at() const { return at_.front(); }

 private:
  std::vector<GeRow> rows_;
  std::vector<std::size_t> at_;
  std::size_t stage_ = 0;
};

/// The network of `inst`, then sigma and lambda for the output rows, with
/// the input check running alongside. In the last layer the output
/// lambdas come first, followed by the input check.
struct Indicators {
  std::vector<Layer> layers;
  std::size_t output_rows = 0;
};

Indicators indicators(const ReachInstance& inst) {
  const Network& net = inst.network;
  const std::vector<GeRow> out = detail::ge_rows(inst.output_spec);
  InputPath path(inst.input_spec, net.input_dim());

  Indicators r;
  r.output_rows = out.size();
  std::size_t width = net.input_dim();
  for (const Layer& layer : net.layers()) {
    LayerBuilder b(width);
    for (std::size_t i = 0; i < layer.size(); ++i) {
      const auto w = layer.weights.row(i);
      b.add(Vector(w.begin(), w.end()), layer.bias[i], layer.activations[i]);
    }
    path.advance(b);
    r.layers.push_back(b.build());
    width = b.size();
  }
  LayerBuilder sigma(width);
  for (const auto& row : out) sigma.add(row.a, -row.r, Activation::sign());
  path.advance(sigma);
  r.layers.push_back(sigma.build());

  LayerBuilder lambda(sigma.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    lambda.add_unit(k, out[k].strict ? -half : half, Activation::sign());
  }
  path.advance(lambda);
  r.layers.push_back(lambda.build());
  return r;
}

Vector ones(std::size_t n, std::size_t from, std::size_t to, const Rational& v = 1) {
  Vector w(n);
  for (std::size_t i = from; i < to; ++i) w[i] = v;
  return w;
}

}  // namespace

ReachInstance ne_to_connr(const Network& a, const Network& b) {
  if (a.input_dim() != b.input_dim() || a.output_dim() != b.output_dim()) {
    throw InputError("equivalence needs matching dimensions, got " +
                     std::to_string(a.input_dim()) + "->" + std::to_string(a.output_dim()) +
                     " and " + std::to_string(b.input_dim()) + "->" +
                     std::to_string(b.output_dim()));
  }
  const Network both = parallel(a, b);
  const std::size_t m = a.output_dim();
  LayerBuilder diff(2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    Vector w(2 * m);
    w[i] = 1;
    w[m + i] = -1;
    diff.add(std::move(w), 0, Activation::sign());
  }
  LayerBuilder sum(m);
  Vector powers(m);
  Rational p = 1;
  for (std::size_t i = 0; i < m; ++i) powers[i] = p *= 2;
  sum.add(std::move(powers), 0, Activation::sign());
  LayerBuilder sides(1);
  sides.add_unit(0, 1, Activation::sign());
  sides.add_unit(0, -1, Activation::sign());
  LayerBuilder z(2);
  z.add(Vector{-1, 1}, 2, Activation::sign());
  Network net =
      append_layers(both, {diff.build(), sum.build(), sides.build(), z.build()});
  LinearSpec out(1, {LinearConstraint::ge(Vector{1}, half)});
  return {std::move(net), LinearSpec(a.input_dim()), std::move(out)};
}

Network constant_minus_one(std::size_t input_dim, std::size_t depth) {
  if (depth == 0) throw InputError("a network needs at least one layer");
  std::vector<Layer> layers;
  if (depth == 1) {
    LayerBuilder b(input_dim);
    b.add({}, -1, Activation::sign());
    layers.push_back(b.build());
    return Network(input_dim, std::move(layers));
  }
  LayerBuilder first(input_dim);
  first.add(input_dim > 0 ? unit(input_dim, 0) : Vector{}, 0, Activation::sign());
  layers.push_back(first.build());
  for (std::size_t l = 2; l < depth; ++l) {
    LayerBuilder carry(1);
    carry.add_unit(0, 0, Activation::sign());
    layers.push_back(carry.build());
  }
  LayerBuilder last(1);
  last.add_unit(0, -2, Activation::sign());
  layers.push_back(last.build());
  return Network(input_dim, std::move(layers));
}

NetworkPair nnr_to_cone(const ReachInstance& inst) {
  Indicators ind = indicators(inst);
  const std::size_t total = ind.output_rows + 1;
  LayerBuilder all(total);
  all.add(ones(total, 0, total), -Rational(static_cast<long>(ind.output_rows)),
          Activation::sign());
  ind.layers.push_back(all.build());
  Network first(inst.network.input_dim(), std::move(ind.layers));
  Network second = constant_minus_one(first.input_dim(), first.depth());
  return {std::move(first), std::move(second)};
}

NetworkPair vip_to_ne(const ReachInstance& inst) {
  Indicators ind = indicators(inst);
  const std::size_t m = ind.output_rows;
  // b = 0 iff the input rows hold (-1 otherwise); c = 1 iff an output row fails.
  LayerBuilder bc(m + 1);
  bc.add_unit(m, 0, Activation::sign());
  bc.add(ones(m + 1, 0, m, -1), Rational(static_cast<long>(m)) - half, Activation::sign());
  LayerBuilder d(2);
  d.add(Vector{1, 1}, -half, Activation::sign());
  ind.layers.push_back(bc.build());
  ind.layers.push_back(d.build());
  Network first(inst.network.input_dim(), std::move(ind.layers));
  Network second = constant_minus_one(first.input_dim(), first.depth());
  return {std::move(first), std::move(second)};
}

}  // namespace plreach::reductions
