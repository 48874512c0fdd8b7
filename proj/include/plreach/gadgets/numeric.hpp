#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "plreach/core/rational.hpp"

namespace plreach::gadgets {

/// 50 significant decimal digits.
using Real = boost::multiprecision::cpp_dec_float_50;

Real to_real(const Rational& q);

/// A real function evaluated in Real precision. Numeric only: nothing here
/// feeds the exact solver.
struct NumericFn {
  enum class Tag {
    exp,
    log,
    arctan,
    arccot,
    cot,
    gaussian,
    cos,
    arccos,
    sigmoid,
    tanh,
    silu,
    algebraic_sigmoid,
    custom
  };
  Tag tag = Tag::custom;
  std::string name;
  std::function<Real(const Real&)> eval;

  Real operator()(const Real& x) const { return eval(x); }

  static NumericFn exp();
  static NumericFn log();
  static NumericFn arctan();
  /// arccot on x > 0 as pi/2 - arctan(x), continued by the same formula.
  static NumericFn arccot();
  static NumericFn cot();
  /// e^(-x^2)
  static NumericFn gaussian();
  static NumericFn cos();
  static NumericFn arccos();
  /// 1 / (1 + e^-x)
  static NumericFn sigmoid();
  static NumericFn tanh();
  /// x / (1 + e^-x)
  static NumericFn silu();
  /// x / sqrt(1 + x^2)
  static NumericFn algebraic_sigmoid();
  static NumericFn custom(std::string name, std::function<Real(const Real&)> f);
  /// By name: the tags above (sigmoid, tanh, ...) plus "square".
  static NumericFn by_name(std::string_view name);
};

enum class IdentityTag { exp_mul, gaussian_pow4, arctan_cubic, cosine_quad };

std::string_view name(IdentityTag tag);
/// Throws InputError for an unknown name.
IdentityTag identity_from_name(std::string_view name);

/// Both sides of an identity at one sample.
struct IdentitySides {
  Real lhs;
  Real rhs;
};

/// The identities, at a point of their domain:
///   exp_mul       (x, y), x, y > 0:  log(x+1) + log(y+1) against log((xy+1) + x + y)
///   gaussian_pow4 (x), 0 < x < 1:    f(2 f^-1(x)) against x^4, f = e^(-t^2)
///   arctan_cubic  (x), x > 0:        4x^3 + 3x against cot(2 arccot(2x) - arccot(x))
///   cosine_quad   (x), -1 < x < 1:   (cos(2 arccos x) - 1) / 2 against the
///                                    fitted quadratic x^2 - 1
/// Throws DomainError outside the domain or for the wrong arity.
IdentitySides identity_sides(IdentityTag tag, std::span<const Real> point);

/// |a - b| / max(|a|, |b|), and 0 when both vanish.
Real relative_error(const Real& a, const Real& b);

struct IdentityReport {
  IdentityTag tag;
  std::size_t samples = 0;
  double tol = 0;
  double max_rel_err = 0;
  bool pass = false;
  /// The polynomial the right side is compared against.
  std::string rhs_polynomial;
  /// For cosine_quad: the quadratic fitted through the right side, and the
  /// error against the commonly stated 2x^2 - 1 for comparison.
  std::optional<std::string> fitted;
  std::optional<double> stated_max_rel_err;

  /// {tag, samples, max_rel_err, pass, ...} as one line of text.
  [[nodiscard]] std::string str() const;
};

/// Samples uniformly from the identity's domain (exp_mul and arctan_cubic
/// on (0, 10), gaussian_pow4 on (0, 1), cosine_quad on (-1, 1)), evaluates
/// both sides and passes iff the largest relative error is at most tol.
IdentityReport verify_identity(IdentityTag tag, std::size_t samples, double tol,
                               std::uint64_t seed = 1);

struct MidpointWitness {
  Rational c;
  Rational d;
  /// |f((c+d)/2) - (f(c) + f(d))/2|
  Real gap;
};

/// Scans pairs of dyadic points of [a, b] breadth-first by depth (depth k
/// uses the grid a + (b - a) i / 2^k, pairs from the widest down) and
/// returns the first pair whose midpoint gap exceeds ten times the
/// precision floor. nullopt when no pair up to `depth` qualifies, as for an
/// affine f. Throws InputError unless a < b.
std::optional<MidpointWitness> midpoint_witness(const NumericFn& f, const Rational& a,
                                                const Rational& b, std::size_t depth);

/// f^(x) = f(c + (d - c) x) and
/// fbar(x) = (f^(x) - f^(0)) + (f^(1 - x) - f^(1)),
/// grouped so that fbar(0) and fbar(1) vanish exactly. Throws InputError
/// for c = d.
NumericFn build_fbar(const NumericFn& f, const Rational& c, const Rational& d);

}  // namespace plreach::gadgets
