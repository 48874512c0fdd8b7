#pragma once

#include <vector>

#include "plreach/core/linear_spec.hpp"
#include "plreach/csp/csp.hpp"

namespace plreach::reductions {

struct NnrCsp {
  csp::CspInstance csp;
  /// CSP variable of each network input, and of each output value.
  std::vector<csp::Var> inputs;
  std::vector<csp::Var> outputs;
};

/// One variable per input and per id output node, v_sum and v_f for every
/// hidden node and every non-id output node. Weighted sums, biases and both
/// specifications are written with the doubling encodings; a non-id node
/// gets v_f = f(v_sum) as a function graph, an id node v_f = v_sum. A
/// strict row l < r has no closed encoding and becomes H(l - r) = 0.
/// Satisfiable iff the instance is.
NnrCsp nnr_to_csp(const ReachInstance& inst);

/// Every CSP variable becomes an input; Leq, Plus, One and Const go into
/// the input specification. Each graph v = f(u) gets an f-node on u and an
/// id-node on v in the single computation layer, and the output
/// specification equates the two. Without graphs the layer copies the
/// inputs. Reach witnesses are CSP solutions. Throws UnsupportedError on Mul.
ReachInstance csp_to_nnr(const csp::CspInstance& csp);

}  // namespace plreach::reductions
