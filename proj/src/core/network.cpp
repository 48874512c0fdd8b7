#include "plreach/core/network.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "plreach/core/errors.hpp"

namespace plreach {

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw InputError("weight row " + std::to_string(r) + " has " +
                       std::to_string(rows[r].size()) + " entries, expected " +
                       std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

std::size_t Matrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& v : data_) n += v.is_zero() ? 0 : 1;
  return n;
}

Network::Network(std::size_t input_dim, std::vector<Layer> layers)
    : input_dim_(input_dim), layers_(std::move(layers)) {
  if (layers_.empty()) throw InputError("network needs at least one layer");
  std::size_t prev = input_dim_;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const Layer& layer = layers_[l];
    const std::string where = "layer " + std::to_string(l);
    if (layer.size() == 0) throw InputError(where + " has no nodes");
    if (layer.activations.size() != layer.size()) {
      throw InputError(where + ": one activation per node required");
    }
    if (layer.weights.rows() != layer.size() || layer.weights.cols() != prev) {
      throw InputError(where + ": weight matrix is " +
                       std::to_string(layer.weights.rows()) + "x" +
                       std::to_string(layer.weights.cols()) + ", expected " +
                       std::to_string(layer.size()) + "x" +
                       std::to_string(prev));
    }
    prev = layer.size();
  }
}

std::size_t Network::node_count() const {
  std::size_t n = 0;
  for (const auto& layer : layers_) n += layer.size();
  return n;
}

std::size_t Network::edge_count() const {
  std::size_t n = 0;
  for (const auto& layer : layers_) n += layer.weights.nonzeros();
  return n;
}

std::size_t Network::bit_size() const {
  std::size_t n = 0;
  for (const auto& layer : layers_) {
    for (std::size_t r = 0; r < layer.weights.rows(); ++r) {
      for (const auto& w : layer.weights.row(r)) {
        if (!w.is_zero()) n += w.bit_size();
      }
    }
    for (const auto& b : layer.bias) n += b.bit_size();
  }
  return n;
}

bool Network::is_linear() const {
  for (const auto& layer : layers_) {
    for (const auto& act : layer.activations) {
      if (!act.is_identity()) return false;
    }
  }
  return true;
}

Vector evaluate(const Network& net, std::span<const Rational> x) {
  if (x.size() != net.input_dim()) {
    throw InputError("input has " + std::to_string(x.size()) +
                     " components, network expects " +
                     std::to_string(net.input_dim()));
  }
  Vector current(x.begin(), x.end());
  for (const auto& layer : net.layers()) {
    Vector next(layer.size());
    for (std::size_t i = 0; i < layer.size(); ++i) {
      Rational s = layer.bias[i];
      const auto row = layer.weights.row(i);
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (!row[j].is_zero()) s += row[j] * current[j];
      }
      next[i] = layer.activations[i].apply(s);
    }
    current = std::move(next);
  }
  return current;
}

Layer identity_layer(std::size_t width) {
  Layer layer{Matrix(width, width), Vector(width),
              std::vector<Activation>(width, Activation::id())};
  for (std::size_t i = 0; i < width; ++i) layer.weights(i, i) = 1;
  return layer;
}

Network pad_to_depth(const Network& net, std::size_t depth) {
  std::vector<Layer> layers = net.layers();
  while (layers.size() < depth) layers.push_back(identity_layer(net.output_dim()));
  return {net.input_dim(), std::move(layers)};
}

Network parallel(const Network& a, const Network& b) {
  if (a.input_dim() != b.input_dim()) {
    throw InputError("parallel composition needs equal input dimensions");
  }
  const std::size_t depth = std::max(a.depth(), b.depth());
  const Network pa = pad_to_depth(a, depth);
  const Network pb = pad_to_depth(b, depth);
  std::vector<Layer> layers;
  layers.reserve(depth);
  for (std::size_t l = 0; l < depth; ++l) {
    const Layer& la = pa.layer(l);
    const Layer& lb = pb.layer(l);
    const bool first = l == 0;
    const std::size_t cols =
        first ? a.input_dim() : la.weights.cols() + lb.weights.cols();
    Layer merged{Matrix(la.size() + lb.size(), cols), {}, {}};
    for (std::size_t i = 0; i < la.size(); ++i) {
      for (std::size_t j = 0; j < la.weights.cols(); ++j) {
        merged.weights(i, j) = la.weights(i, j);
      }
    }
    const std::size_t offset = first ? 0 : la.weights.cols();
    for (std::size_t i = 0; i < lb.size(); ++i) {
      for (std::size_t j = 0; j < lb.weights.cols(); ++j) {
        merged.weights(la.size() + i, offset + j) = lb.weights(i, j);
      }
    }
    merged.bias = la.bias;
    merged.bias.insert(merged.bias.end(), lb.bias.begin(), lb.bias.end());
    merged.activations = la.activations;
    merged.activations.insert(merged.activations.end(), lb.activations.begin(),
                              lb.activations.end());
    layers.push_back(std::move(merged));
  }
  return {a.input_dim(), std::move(layers)};
}

Network restrict_outputs(const Network& net,
                         std::span<const std::size_t> outputs) {
  std::vector<Layer> layers = net.layers();
  const Layer& last = net.layers().back();
  Layer kept{Matrix(outputs.size(), last.weights.cols()), {}, {}};
  for (std::size_t k = 0; k < outputs.size(); ++k) {
    const std::size_t i = outputs[k];
    if (i >= last.size()) throw InputError("output index out of range");
    for (std::size_t j = 0; j < last.weights.cols(); ++j) {
      kept.weights(k, j) = last.weights(i, j);
    }
    kept.bias.push_back(last.bias[i]);
    kept.activations.push_back(last.activations[i]);
  }
  layers.back() = std::move(kept);
  return {net.input_dim(), std::move(layers)};
}

Network append_layers(const Network& net, std::vector<Layer> extra) {
  std::vector<Layer> layers = net.layers();
  for (auto& layer : extra) layers.push_back(std::move(layer));
  return {net.input_dim(), std::move(layers)};
}

}  // namespace plreach
