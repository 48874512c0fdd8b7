#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plreach/core/rational.hpp"
#include "plreach/csp/csp.hpp"

namespace plreach::gadgets {

/// A primitive-positive formula: variables [0, slots) are its free
/// arguments, the remaining ones are existentially quantified.
struct Template {
  std::size_t slots = 0;
  csp::CspInstance body;
};

/// Copies the template into `target`, binding its slots to `args` and
/// giving every existential variable a fresh index. Returns the indices
/// allocated for the existential variables, in template order.
std::vector<csp::Var> instantiate(csp::CspInstance& target, const Template& t,
                                  std::span<const csp::Var> args);

/// A d-dimensional interpretation: each source element is represented by a
/// d-tuple satisfying `domain`; each source relation by a formula over the
/// concatenated tuples of its arguments.
struct Interpretation {
  std::size_t dimension = 1;
  /// Human-readable description of the coordinate map h.
  std::string coordinate_map;
  Template domain;
  Template leq;
  Template plus;
  Template one;
  Template mul;
  /// Formula for "x = value".
  std::function<Template(const Rational&)> constant;
  /// h: the source element a tuple represents.
  std::function<Rational(std::span<const Rational>)> image;
  /// A tuple in the domain representing a source element.
  std::function<Vector(const Rational&)> preimage;
};

struct Interpreted {
  csp::CspInstance csp;
  /// coords[v] are the target variables of the tuple standing for v.
  std::vector<std::vector<csp::Var>> coords;
};

/// Rewrites every variable as a tuple and every constraint through its
/// formula. Function graphs are not part of the interpreted signature and
/// raise UnsupportedError.
Interpreted interpret(const csp::CspInstance& source, const Interpretation& interp);

/// Carries a solution of the source instance to the interpreted one: the
/// tuples come from `preimage`, the existential helpers from exact
/// propagation. Returns nullopt if propagation leaves a helper undetermined.
std::optional<Vector> lift(const Interpreted& out, const Interpretation& interp,
                           std::span<const Rational> solution);

/// Reads a source solution back off an interpreted one through `image`.
Vector project(const Interpreted& out, const Interpretation& interp,
               std::span<const Rational> solution);

/// The 2-dimensional interpretation of (R; <=, +, 1, *) in the non-negative
/// reals: x is the pair (a, b) = (max(x, 0), max(-x, 0)) with a b = 0, and
/// h(a, b) = a - b. Sums and products are repaired by a common slack e:
/// a + c - e = e' and b + d - e = f' for addition, ac + bd - e = e' and
/// ad + bc - e = f' for multiplication.
Interpretation positive_interpretation();

/// (R+; <=, +, 1, *) inside [n, oo) by the shift h(a) = a - n.
Interpretation shift_interpretation(const BigInt& n);

/// ([n, oo); <=, +, const, *) inside (0, 1/n] by h(u) = 1/u.
Interpretation reciprocal_interpretation(const BigInt& n);

/// Applies positive_interpretation.
Interpreted interpret_positive(const csp::CspInstance& etr);

/// The shift followed by the reciprocal interpretation: an instance over
/// the non-negative reals becomes one over (0, 1/n]. Both stages are
/// returned so solutions can be carried across each.
struct UnitIntervalResult {
  Interpreted shifted;
  Interpreted reciprocal;
};
UnitIntervalResult interpret_unit_interval(const csp::CspInstance& etr_pos,
                                           const BigInt& n);

}  // namespace plreach::gadgets
