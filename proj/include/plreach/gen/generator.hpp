#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "plreach/core/activation.hpp"
#include "plreach/core/linear_spec.hpp"

namespace plreach::gen {

struct GenConfig {
  std::uint64_t seed = 0;
  std::size_t input_dim = 2;
  /// Number of layers, the output layer included.
  std::size_t depth = 2;
  /// Width of every hidden layer.
  std::size_t width = 2;
  std::size_t output_dim = 1;
  /// Each node draws its activation uniformly from this list.
  std::vector<Activation> activations = {Activation::relu()};
  /// Weights, biases and spec data are p/q with |p| <= max_numerator and
  /// 1 <= q <= max_denominator.
  std::int64_t max_numerator = 4;
  std::int64_t max_denominator = 3;
  std::size_t input_constraints = 2;
  std::size_t output_constraints = 1;
  /// Draw an input first and build both specs around it, so the instance
  /// is satisfiable by construction.
  bool planted = false;
};

/// Throws InputError when a count is zero or a bound is not positive.
void validate(const GenConfig& cfg);

/// Deterministic in `cfg`: the same config yields the same instance on
/// every platform (the bounded draws do not depend on the standard
/// library's distributions).
ReachInstance generate(const GenConfig& cfg);

/// Small deterministic RNG front end shared by the generator and tests.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Uniform in [lo, hi], unbiased (rejection sampling).
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  Rational rational(std::int64_t max_numerator, std::int64_t max_denominator);
  std::uint64_t next();

 private:
  std::uint64_t state_[4];
};

}  // namespace plreach::gen
