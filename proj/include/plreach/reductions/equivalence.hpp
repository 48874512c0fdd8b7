#pragma once

#include <vector>

#include "plreach/core/linear_spec.hpp"
#include "plreach/core/network.hpp"

namespace plreach::reductions {

/// Both nets on shared inputs (the shallower padded with id layers), then
///   y_i = sign(y1_i - y2_i),  y = sign(sum_i 2^i y_i),
///   z = sign(2 - sign(y + 1) + sign(y - 1)),
/// so z is 0 where the nets agree and 1 where they differ. Output
/// specification z >= 1/2: Sat iff the nets are not equivalent. Throws
/// InputError when the dimensions differ.
ReachInstance ne_to_connr(const Network& a, const Network& b);

/// first(x) is 0 when x satisfies the input specification and N(x) the
/// output specification, -1 otherwise; second(x) = -1 everywhere. Every row
/// is brought to the form a.v >= r (or >) and tested by
/// lambda = sign(sign(a.v - r) + 1/2) (- 1/2 when strict), then
/// sign(sum lambda - m). The instance is Sat iff the pair is not equivalent.
NetworkPair nnr_to_cone(const ReachInstance& inst);

/// first(x) is 1 when x satisfies the input specification but N(x) misses
/// the output specification, -1 otherwise; second(x) = -1. The interval
/// property fails iff the pair is not equivalent.
NetworkPair vip_to_ne(const ReachInstance& inst);

/// A net computing -1 on every input, `depth` >= 2 sign layers deep.
Network constant_minus_one(std::size_t input_dim, std::size_t depth);

}  // namespace plreach::reductions
