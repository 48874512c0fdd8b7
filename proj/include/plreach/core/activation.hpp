#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "plreach/core/rational.hpp"

namespace plreach {

/// One affine cell of a piecewise-linear function. A missing bound is
/// infinite (and therefore open).
struct Piece {
  std::optional<Rational> lo;
  bool lo_closed = false;
  std::optional<Rational> hi;
  bool hi_closed = false;
  Rational slope;
  Rational intercept;

  [[nodiscard]] bool contains(const Rational& x) const;
  [[nodiscard]] bool is_point() const { return lo && hi && *lo == *hi; }
  [[nodiscard]] Rational value(const Rational& x) const {
    return slope * x + intercept;
  }

  friend bool operator==(const Piece&, const Piece&) = default;
};

enum class ActivationKind {
  Id,
  Relu,
  LeakyRelu,
  Heaviside,
  Sign,
  Abs,
  HardSigmoid,
  Custom,
};

/// A piecewise-linear activation whose pieces partition the real line:
/// sorted, pairwise disjoint, and covering every real exactly once.
///
/// Step functions own their jump point on the right (H(0) = 1); sign has a
/// dedicated point piece at 0 so that sign(0) = 0.
class Activation {
 public:
  static Activation id();
  static Activation relu();
  static Activation leaky_relu(const Rational& alpha);
  static Activation heaviside();
  static Activation sign();
  static Activation abs();
  /// -1 below -alpha, x/alpha on [-alpha, alpha], 1 above; alpha > 0.
  static Activation hard_sigmoid(const Rational& alpha);
  /// Throws InputError unless the pieces partition the real line.
  static Activation custom(std::vector<Piece> pieces);

  [[nodiscard]] ActivationKind kind() const { return kind_; }
  [[nodiscard]] std::string_view name() const;
  [[nodiscard]] const std::vector<Piece>& pieces() const { return pieces_; }
  [[nodiscard]] const std::vector<Rational>& params() const { return params_; }
  [[nodiscard]] std::size_t piece_count() const { return pieces_.size(); }
  [[nodiscard]] bool is_identity() const { return kind_ == ActivationKind::Id; }

  /// Index of the unique piece containing x.
  [[nodiscard]] std::size_t piece_index(const Rational& x) const;
  [[nodiscard]] Rational apply(const Rational& x) const {
    return pieces_[piece_index(x)].value(x);
  }

  friend bool operator==(const Activation&, const Activation&) = default;

 private:
  Activation(ActivationKind kind, std::vector<Piece> pieces,
             std::vector<Rational> params);

  ActivationKind kind_;
  std::vector<Piece> pieces_;
  std::vector<Rational> params_;
};

/// Throws InputError describing the first violation of the partition
/// invariant.
void validate_pieces(const std::vector<Piece>& pieces);

inline Rational apply_activation(const Activation& act, const Rational& x) {
  return act.apply(x);
}

}  // namespace plreach
