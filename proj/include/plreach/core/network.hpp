#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "plreach/core/activation.hpp"
#include "plreach/core/rational.hpp"

namespace plreach {

/// Dense row-major matrix of rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  /// Throws InputError if the rows are ragged.
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  const Rational& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  [[nodiscard]] std::span<const Rational> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  [[nodiscard]] std::size_t nonzeros() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// One computation layer: node i computes
/// activations[i](weights.row(i) . previous + bias[i]).
struct Layer {
  Matrix weights;
  Vector bias;
  std::vector<Activation> activations;

  [[nodiscard]] std::size_t size() const { return bias.size(); }

  friend bool operator==(const Layer&, const Layer&) = default;
};

/// Strictly layered feedforward network. Immutable once built; the
/// constructor checks that dimensions chain from the inputs to the outputs.
class Network {
 public:
  Network(std::size_t input_dim, std::vector<Layer> layers);

  [[nodiscard]] std::size_t input_dim() const { return input_dim_; }
  [[nodiscard]] std::size_t output_dim() const { return layers_.back().size(); }
  [[nodiscard]] std::size_t depth() const { return layers_.size(); }
  [[nodiscard]] const std::vector<Layer>& layers() const { return layers_; }
  [[nodiscard]] const Layer& layer(std::size_t l) const { return layers_[l]; }

  /// Computation nodes (inputs excluded).
  [[nodiscard]] std::size_t node_count() const;
  /// Connections, i.e. non-zero weights.
  [[nodiscard]] std::size_t edge_count() const;
  /// Encoding size: bit sizes of all non-zero weights and of every bias.
  [[nodiscard]] std::size_t bit_size() const;
  /// True when every activation is the identity.
  [[nodiscard]] bool is_linear() const;

  friend bool operator==(const Network&, const Network&) = default;

 private:
  std::size_t input_dim_;
  std::vector<Layer> layers_;
};

/// Exact forward pass. Throws InputError on a dimension mismatch.
Vector evaluate(const Network& net, std::span<const Rational> x);

/// A layer of identity nodes copying `width` values unchanged.
Layer identity_layer(std::size_t width);

/// Appends identity layers until `net` has `depth` layers.
Network pad_to_depth(const Network& net, std::size_t depth);

/// Runs both networks side by side on shared inputs; outputs are a's
/// followed by b's. The shallower one is padded with identity layers.
Network parallel(const Network& a, const Network& b);

/// Keeps only the listed output nodes, in the given order.
Network restrict_outputs(const Network& net,
                         std::span<const std::size_t> outputs);

/// Returns `net` with `extra` appended after its output layer.
Network append_layers(const Network& net, std::vector<Layer> extra);

}  // namespace plreach
