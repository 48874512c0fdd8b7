#pragma once

#include <span>
#include <vector>

#include "plreach/core/activation.hpp"
#include "plreach/core/linear_spec.hpp"
#include "plreach/core/network.hpp"

namespace plreach::reductions {

/// One reach instance per output row with the row negated (an equality
/// gives two). The interval property holds iff all of them are Unsat.
std::vector<ReachInstance> vip_to_connr(const ReachInstance& inst);

enum class CovipVariant { Heaviside, Sign, Relu };

/// Appends layers that flag whether N(x) meets the output specification;
/// the result is an interval-property instance that fails iff the reach
/// instance is Sat.
///   Heaviside: a_k = H(b - a.y) per row (H(a.y - b), subtracted, for a
///     strict row), then H(sum - n); output interval (-1/2, 1/2).
///   Sign: lambda_k = sign(sign(b - a.y) +- 1/2), mu = sign(sum - n + 1/2),
///     then sign(mu + 1); output interval (-1/2, 1/2).
///   Relu: a_k = ReLU(a.y - b), then ReLU(sum); output interval (0, oo).
///     Throws UnsupportedError on strict rows, which ReLU cannot separate.
ReachInstance nnr_to_covip(const ReachInstance& inst, CovipVariant variant);

/// Picks Heaviside, then sign, then ReLU from the allowed activations.
/// Throws UnsupportedError when none is allowed.
CovipVariant covip_variant(std::span<const ActivationKind> allowed);

/// ne_to_connr followed by nnr_to_covip: the nets are equivalent iff the
/// interval property holds.
ReachInstance ne_to_vip(const Network& a, const Network& b,
                        CovipVariant variant = CovipVariant::Sign);

/// Equivalence one output at a time.
std::vector<NetworkPair> to_single_output(const NetworkPair& pair);
/// The interval property one output row at a time.
std::vector<ReachInstance> to_single_output(const ReachInstance& vip);

}  // namespace plreach::reductions
