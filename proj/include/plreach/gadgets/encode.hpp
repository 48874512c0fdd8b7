#pragma once

#include <vector>

#include "plreach/core/rational.hpp"
#include "plreach/csp/csp.hpp"

namespace plreach::gadgets {

/// The encoders below allocate helper variables in `csp`, append their
/// constraints to it, and return exactly the constraints they appended.

/// Forces var = n (n >= 1) with a doubling chain: one constant, one Plus per
/// doubling and one per extra set bit, so at most 2 floor(log2 n) + 2
/// constraints. Throws InputError for n < 1.
std::vector<csp::Constraint> encode_integer(csp::CspInstance& csp,
                                            const BigInt& n, csp::Var var);

/// Forces target = m * base for m >= 2 using the same doubling scheme on
/// `base` instead of the constant 1.
std::vector<csp::Constraint> encode_multiple(csp::CspInstance& csp,
                                             const BigInt& m, csp::Var base,
                                             csp::Var target);

/// A fresh variable forced to 0 (o = 1, z + o = o).
csp::Var make_zero(csp::CspInstance& csp);

/// Forces t = q * x. With q = p/r in lowest terms: u = |p| x by a chain,
/// then r t' = u by a chain whose result is u, and t = -t' when q < 0.
/// q = 0 and q = 1 use the zero variable directly.
std::vector<csp::Constraint> encode_rational_coefficient(csp::CspInstance& csp,
                                                         const Rational& q,
                                                         csp::Var x, csp::Var t,
                                                         csp::Var zero);

}  // namespace plreach::gadgets
