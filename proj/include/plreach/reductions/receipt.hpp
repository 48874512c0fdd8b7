#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "plreach/core/io.hpp"
#include "plreach/core/linear_spec.hpp"
#include "plreach/core/rational.hpp"
#include "plreach/csp/csp.hpp"

namespace plreach::reductions {

enum class Reduction {
  NnrToCsp,
  CspToNnr,
  EliminateId,
  NeToConnr,
  NnrToCone,
  VipToConnr,
  NnrToCovip,
  NeToVip,
  VipToNe,
  ToSingleOutput,
};

std::string_view name(Reduction r);

/// Instance sizes: encoding lengths for networks and specifications;
/// variables plus constraints for a constraint instance, where a constant
/// constraint also counts the length of its value.
std::size_t size_of(const ReachInstance& inst);
std::size_t size_of(const NetworkPair& pair);
std::size_t size_of(const csp::CspInstance& csp);

/// Certifies output_size <= bound_factor * input_size + bound_constant for
/// the reduction's fixed linear bound.
struct ReductionReceipt {
  Reduction reduction;
  std::size_t input_size = 0;
  std::size_t output_size = 0;
  Rational bound_factor;
  std::size_t bound_constant = 0;

  [[nodiscard]] bool within_bound() const;
  [[nodiscard]] io::Json to_json() const;
};

/// Fills in the bound pinned for `r`.
ReductionReceipt make_receipt(Reduction r, std::size_t input_size, std::size_t output_size);

}  // namespace plreach::reductions
