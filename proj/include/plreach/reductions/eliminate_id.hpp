#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "plreach/core/linear_spec.hpp"
#include "plreach/core/network.hpp"

namespace plreach::reductions {

/// How to read the original outputs off the outputs of a transformed net:
/// original output i is the sum of sign * output[index] over terms[i].
struct SignedReadout {
  std::vector<std::vector<std::pair<std::size_t, int>>> terms;

  [[nodiscard]] Vector read(std::span<const Rational> outputs) const;
  /// The same constraints, stated over the transformed outputs.
  [[nodiscard]] LinearSpec pull_back(const LinearSpec& spec, std::size_t output_dim) const;
};

struct IdFree {
  Network net;
  SignedReadout readout;
};

/// Replaces every id node by two ReLU nodes, one with its incoming weights
/// and bias as they are and one with them negated; outgoing weights are
/// copied with the same signs, since x = ReLU(x) - ReLU(-x). An id output
/// node becomes a pair of outputs read as their difference, because a
/// ReLU output cannot be negative. At most twice the nodes and four times
/// the edges. Throws UnsupportedError for activations other than id and
/// ReLU.
IdFree eliminate_id(const Network& net);

/// The reach instance over the ReLU-only net with the output specification
/// pulled back through the readout.
ReachInstance eliminate_id(const ReachInstance& inst);

}  // namespace plreach::reductions
