#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "plreach/core/rational.hpp"
#include "plreach/csp/csp.hpp"

namespace plreach::gadgets {

/// Dense univariate polynomial with exact coefficients, index = degree.
/// Trailing zeros are stripped, so the zero polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(Vector coeffs);
  /// c * x^n
  static Polynomial monomial(std::size_t n, const Rational& c = 1);

  [[nodiscard]] const Vector& coeffs() const { return coeffs_; }
  [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] Rational coeff(std::size_t i) const {
    return i < coeffs_.size() ? coeffs_[i] : Rational();
  }
  [[nodiscard]] Rational leading() const { return is_zero() ? Rational() : coeffs_.back(); }
  [[nodiscard]] Rational operator()(const Rational& x) const;
  /// x -> p(x + k)
  [[nodiscard]] Polynomial shifted(const Rational& k) const;
  [[nodiscard]] std::string str() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& c, const Polynomial& p);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim();
  Vector coeffs_;
};

struct ShiftTerm {
  BigInt shift;
  Rational scale;
  friend bool operator==(const ShiftTerm&, const ShiftTerm&) = default;
};

/// sum_j scale_j * p(x + shift_j) + linear * x + constant, meant to equal x^2.
struct SquareCombination {
  std::vector<ShiftTerm> terms;
  Rational linear;
  Rational constant;

  /// Expands the combination for a concrete p.
  [[nodiscard]] Polynomial expand(const Polynomial& p) const;
};

/// Builds x^2 from shifted copies of p (degree >= 2). The monic version of p
/// is reduced degree by degree: from the current monic q of degree d, the
/// first difference q(x + k) - q(x), k = 1, 2, ..., with a non-vanishing
/// x^(d-1) coefficient is divided by that coefficient. The monic quadratic
/// and linear members of this basis give x^2 up to a constant, which is
/// left as the correction; the linear correction is always zero. Throws
/// InputError for degree < 2.
SquareCombination poly_to_square(const Polynomial& p);

/// Constraints forcing w = u * v from a squaring graph, using
/// u v = ((u + v)^2 - u^2 - v^2) / 2. Appends to csp and returns what it
/// appended.
std::vector<csp::Constraint> mult_from_square(csp::CspInstance& csp, csp::Var u,
                                              csp::Var v, csp::Var w);

/// Constraints forcing y = x^2 given only the graph of p, affine
/// arithmetic and constants: every shifted copy p(x + k) is one graph
/// constraint, and the scales and the affine correction are linear
/// encodings. Appends to csp and returns what it appended.
std::vector<csp::Constraint> define_square(csp::CspInstance& csp, const Polynomial& p,
                                           csp::Var x, csp::Var y);

}  // namespace plreach::gadgets
