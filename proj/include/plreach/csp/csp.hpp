#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "plreach/core/activation.hpp"
#include "plreach/core/io.hpp"
#include "plreach/core/rational.hpp"

namespace plreach::csp {

using Var = std::size_t;

/// u <= v
struct Leq {
  Var u, v;
  friend bool operator==(const Leq&, const Leq&) = default;
};
/// u + v = w
struct Plus {
  Var u, v, w;
  friend bool operator==(const Plus&, const Plus&) = default;
};
/// u = 1
struct One {
  Var u;
  friend bool operator==(const One&, const One&) = default;
};
/// u = value. Shorthand the interpretations use for shifted constants; it
/// is pp-definable from One and Plus for every rational.
struct Const {
  Var u;
  Rational value;
  friend bool operator==(const Const&, const Const&) = default;
};
/// u * v = w
struct Mul {
  Var u, v, w;
  friend bool operator==(const Mul&, const Mul&) = default;
};

/// Coefficients by degree; the graph of x -> sum c_i x^i.
struct PolyFn {
  Vector coeffs;
  friend bool operator==(const PolyFn&, const PolyFn&) = default;
};

using Function = std::variant<Activation, PolyFn>;

/// v = f(u)
struct FnGraph {
  Function f;
  Var u, v;
  friend bool operator==(const FnGraph&, const FnGraph&) = default;
};

using Constraint = std::variant<Leq, Plus, One, Const, Mul, FnGraph>;

Rational apply(const Function& f, const Rational& x);
std::string describe(const Constraint& c);
/// Variables mentioned by the constraint, in argument order.
std::vector<Var> variables(const Constraint& c);

/// Variables plus a conjunction of constraints over them.
class CspInstance {
 public:
  explicit CspInstance(std::size_t num_vars = 0,
                       std::vector<Constraint> constraints = {});

  [[nodiscard]] std::size_t num_vars() const { return num_vars_; }
  [[nodiscard]] const std::vector<Constraint>& constraints() const {
    return constraints_;
  }
  /// Variables plus constraints.
  [[nodiscard]] std::size_t size() const {
    return num_vars_ + constraints_.size();
  }

  Var fresh() { return num_vars_++; }
  /// Throws InputError if the constraint mentions an unknown variable.
  void add(Constraint c);
  void append(const std::vector<Constraint>& cs);

  template <class T>
  [[nodiscard]] std::size_t count() const {
    std::size_t n = 0;
    for (const auto& c : constraints_) n += std::holds_alternative<T>(c) ? 1 : 0;
    return n;
  }

  friend bool operator==(const CspInstance&, const CspInstance&) = default;

 private:
  std::size_t num_vars_;
  std::vector<Constraint> constraints_;
};

/// Exact check of every constraint.
bool holds(const Constraint& c, std::span<const Rational> a);
bool satisfied(const CspInstance& csp, std::span<const Rational> assignment);

using Partial = std::vector<std::optional<Rational>>;

/// Fills in every value the constraints force from the known ones: constants,
/// sums with two known terms, products with known factors (or a known
/// product and a non-zero factor), function graphs with a known argument,
/// and whatever the linear part (Plus, One, Const) determines as a system.
/// Runs to a fixpoint; leaves undetermined variables empty. Throws
/// InputError if the constraints force conflicting values.
Partial propagate(const CspInstance& csp, Partial known);

/// {"vars": n, "constraints": [{"kind": "plus", "args": [u, v, w]}, ...]}
/// Kinds: leq, plus, one, const (with "value"), mul, fn (with "activation"
/// or "poly").
io::Json to_json(const CspInstance& csp);
CspInstance csp_from_json(const io::Json& j, const std::string& at = "");

}  // namespace plreach::csp
