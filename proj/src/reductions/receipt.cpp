#include "plreach/reductions/receipt.hpp"

namespace plreach::reductions {

std::string_view name(Reduction r) {
  switch (r) {
    case Reduction::NnrToCsp: return "nnr-to-csp";
    case Reduction::CspToNnr: return "csp-to-nnr";
    case Reduction::EliminateId: return "eliminate-id";
    case Reduction::NeToConnr: return "ne-to-connr";
    case Reduction::NnrToCone: return "nnr-to-cone";
    case Reduction::VipToConnr: return "vip-to-connr";
    case Reduction::NnrToCovip: return "nnr-to-covip";
    case Reduction::NeToVip: return "ne-to-vip";
    case Reduction::VipToNe: return "vip-to-ne";
    case Reduction::ToSingleOutput: return "to-single-output";
  }
  return "?";
}

namespace {

std::size_t network_size(const Network& net) {
  return net.bit_size() + net.input_dim() + net.node_count();
}

struct Bound {
  Rational factor;
  std::size_t constant;
};

/// Factors measured on random suites with head room; csp-to-nnr is set by
/// its worst constraint, a function graph costing 22 units in the output.
Bound bound_for(Reduction r) {
  switch (r) {
    case Reduction::NnrToCsp: return {6, 16};
    case Reduction::CspToNnr: return {24, 8};
    case Reduction::EliminateId: return {4, 0};
    case Reduction::NeToConnr: return {8, 64};
    case Reduction::NnrToCone: return {6, 64};
    case Reduction::VipToConnr: return {1, 8};
    case Reduction::NnrToCovip: return {4, 64};
    case Reduction::NeToVip: return {8, 128};
    case Reduction::VipToNe: return {8, 64};
    case Reduction::ToSingleOutput: return {1, 0};
  }
  return {1, 0};
}

}  // namespace

std::size_t size_of(const ReachInstance& inst) {
  return network_size(inst.network) + inst.input_spec.bit_size() + inst.output_spec.bit_size();
}

std::size_t size_of(const NetworkPair& pair) {
  return network_size(pair.first) + network_size(pair.second);
}

std::size_t size_of(const csp::CspInstance& c) {
  std::size_t n = c.size();
  for (const auto& k : c.constraints()) {
    if (const auto* p = std::get_if<csp::Const>(&k)) n += p->value.bit_size();
  }
  return n;
}

bool ReductionReceipt::within_bound() const {
  return Rational(static_cast<long>(output_size)) <=
         bound_factor * Rational(static_cast<long>(input_size)) +
             Rational(static_cast<long>(bound_constant));
}

io::Json ReductionReceipt::to_json() const {
  io::Json j;
  j["reduction"] = std::string(name(reduction));
  j["input_size"] = input_size;
  j["output_size"] = output_size;
  j["bound_factor"] = io::to_json(bound_factor);
  j["bound_constant"] = bound_constant;
  j["within_bound"] = within_bound();
  return j;
}

ReductionReceipt make_receipt(Reduction r, std::size_t input_size, std::size_t output_size) {
  const Bound b = bound_for(r);
  return {r, input_size, output_size, b.factor, b.constant};
}

}  // namespace plreach::reductions
