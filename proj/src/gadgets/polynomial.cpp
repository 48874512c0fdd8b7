#include "plreach/gadgets/polynomial.hpp"

#include <map>
#include <utility>

#include "plreach/core/errors.hpp"
#include "plreach/gadgets/encode.hpp"

namespace plreach::gadgets {

Polynomial::Polynomial(Vector coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::monomial(std::size_t n, const Rational& c) {
  Vector v(n + 1);
  v[n] = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::shifted(const Rational& k) const {
  // Horner in polynomial arithmetic: acc = acc * (x + k) + c_i.
  const Polynomial step(Vector{k, 1});
  Polynomial acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * step + Polynomial(Vector{*it});
  }
  return acc;
}

std::string Polynomial::str() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const Rational& c = coeffs_[i];
    if (c.is_zero()) continue;
    if (!out.empty()) out += c.sign() < 0 ? " - " : " + ";
    else if (c.sign() < 0) out += "-";
    const Rational a = c.abs();
    const bool unit = a == 1 && i > 0;
    if (!unit) out += a.is_integer() ? a.num().get_str() : a.str();
    if (i > 0) out += (unit ? "" : "*") + std::string("x");
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  Vector v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
  return Polynomial(std::move(v));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  return a + Rational(-1) * b;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  Vector v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(v));
}

Polynomial operator*(const Rational& c, const Polynomial& p) {
  Vector v = p.coeffs_;
  for (auto& x : v) x *= c;
  return Polynomial(std::move(v));
}

Polynomial SquareCombination::expand(const Polynomial& p) const {
  Polynomial sum(Vector{constant, linear});
  for (const auto& t : terms) sum = sum + t.scale * p.shifted(Rational(t.shift));
  return sum;
}

namespace {

/// A polynomial known both explicitly and as sum_k c_k p(x + k).
struct Tracked {
  Polynomial poly;
  std::map<BigInt, Rational> shifts;
};

Tracked shift(const Tracked& t, const BigInt& k) {
  Tracked out{t.poly.shifted(Rational(k)), {}};
  for (const auto& [s, c] : t.shifts) out.shifts[s + k] = c;
  return out;
}

Tracked combine(const Tracked& a, const Rational& ca, const Tracked& b, const Rational& cb) {
  Tracked out{ca * a.poly + cb * b.poly, {}};
  for (const auto& [s, c] : a.shifts) out.shifts[s] += ca * c;
  for (const auto& [s, c] : b.shifts) out.shifts[s] += cb * c;
  std::erase_if(out.shifts, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

}  // namespace

SquareCombination poly_to_square(const Polynomial& p) {
  if (p.degree() < 2) {
    throw InputError("squaring needs a polynomial of degree at least 2, got " + p.str());
  }
  // Monic normalisation: p / a_n = sum over the single shift 0.
  const Rational lead = p.leading();
  Tracked q{lead.inverse() * p, {{BigInt(0), lead.inverse()}}};
  Tracked quadratic;
  while (q.poly.degree() > 1) {
    if (q.poly.degree() == 2) quadratic = q;
    const auto d = static_cast<std::size_t>(q.poly.degree());
    for (BigInt k = 1;; ++k) {
      Tracked diff = combine(shift(q, k), 1, q, -1);
      const Rational c = diff.poly.coeff(d - 1);
      if (c.is_zero()) continue;
      q = combine(diff, c.inverse(), diff, 0);
      break;
    }
  }
  // quadratic = x^2 + a x + b and q = x + c, so x^2 = quadratic - a q + (a c - b).
  const Rational a = quadratic.poly.coeff(1);
  Tracked square = a.is_zero() ? quadratic : combine(quadratic, 1, q, -a);
  SquareCombination out;
  for (const auto& [s, c] : square.shifts) out.terms.push_back({s, c});
  out.linear = -square.poly.coeff(1);
  out.constant = -square.poly.coeff(0);
  return out;
}

std::vector<csp::Constraint> mult_from_square(csp::CspInstance& csp, csp::Var u,
                                              csp::Var v, csp::Var w) {
  const csp::PolyFn square{Vector{0, 0, 1}};
  const csp::Var s = csp.fresh(), ss = csp.fresh(), uu = csp.fresh(), vv = csp.fresh(),
                 t = csp.fresh(), d = csp.fresh();
  const std::vector<csp::Constraint> cs = {
      csp::Plus{u, v, s},          csp::FnGraph{square, s, ss}, csp::FnGraph{square, u, uu},
      csp::FnGraph{square, v, vv}, csp::Plus{uu, vv, t},        csp::Plus{d, t, ss},
      csp::Plus{w, w, d},
  };
  csp.append(cs);
  return cs;
}

std::vector<csp::Constraint> define_square(csp::CspInstance& csp, const Polynomial& p,
                                           csp::Var x, csp::Var y) {
  const SquareCombination combo = poly_to_square(p);
  const std::size_t before = csp.constraints().size();
  const csp::Var zero = make_zero(csp);
  const csp::PolyFn graph{p.coeffs()};
  // y = sum_j scale_j p(x + k_j) + linear x + constant
  std::vector<csp::Var> parts;
  for (const auto& term : combo.terms) {
    csp::Var arg = x;
    if (term.shift != 0) {
      const csp::Var k = csp.fresh();
      encode_integer(csp, term.shift, k);
      arg = csp.fresh();
      csp.add(csp::Plus{x, k, arg});
    }
    const csp::Var value = csp.fresh();
    csp.add(csp::FnGraph{graph, arg, value});
    const csp::Var scaled = csp.fresh();
    encode_rational_coefficient(csp, term.scale, value, scaled, zero);
    parts.push_back(scaled);
  }
  const csp::Var lin = csp.fresh();
  encode_rational_coefficient(csp, combo.linear, x, lin, zero);
  parts.push_back(lin);
  if (!combo.constant.is_zero()) {
    const csp::Var c = csp.fresh();
    csp.add(csp::Const{c, combo.constant});
    parts.push_back(c);
  }
  csp::Var acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const csp::Var next = i + 1 == parts.size() ? y : csp.fresh();
    csp.add(csp::Plus{acc, parts[i], next});
    acc = next;
  }
  if (parts.size() == 1) csp.add(csp::Plus{acc, zero, y});
  return {csp.constraints().begin() + static_cast<std::ptrdiff_t>(before),
          csp.constraints().end()};
}

}  // namespace plreach::gadgets
