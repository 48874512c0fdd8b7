#include "plreach/gadgets/numeric.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <utility>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "plreach/core/errors.hpp"
#include "plreach/core/io.hpp"
#include "plreach/gadgets/polynomial.hpp"

namespace plreach::gadgets {

namespace mp = boost::multiprecision;

namespace {

const Real& pi() {
  static const Real value = boost::math::constants::pi<Real>();
  return value;
}

const Real& half_pi() {
  static const Real value = pi() / 2;
  return value;
}

NumericFn make(NumericFn::Tag tag, std::string name, std::function<Real(const Real&)> f) {
  return {tag, std::move(name), std::move(f)};
}

}  // namespace

Real to_real(const Rational& q) {
  return Real(q.num().get_str()) / Real(q.den().get_str());
}

NumericFn NumericFn::exp() {
  return make(Tag::exp, "exp", [](const Real& x) { return Real(mp::exp(x)); });
}
NumericFn NumericFn::log() {
  return make(Tag::log, "log", [](const Real& x) { return Real(mp::log(x)); });
}
NumericFn NumericFn::arctan() {
  return make(Tag::arctan, "arctan", [](const Real& x) { return Real(mp::atan(x)); });
}
NumericFn NumericFn::arccot() {
  return make(Tag::arccot, "arccot", [](const Real& x) { return Real(half_pi() - mp::atan(x)); });
}
NumericFn NumericFn::cot() {
  return make(Tag::cot, "cot", [](const Real& x) { return Real(mp::cos(x) / mp::sin(x)); });
}
NumericFn NumericFn::gaussian() {
  return make(Tag::gaussian, "gaussian", [](const Real& x) { return Real(mp::exp(-x * x)); });
}
NumericFn NumericFn::cos() {
  return make(Tag::cos, "cos", [](const Real& x) { return Real(mp::cos(x)); });
}
NumericFn NumericFn::arccos() {
  return make(Tag::arccos, "arccos", [](const Real& x) { return Real(mp::acos(x)); });
}
NumericFn NumericFn::sigmoid() {
  return make(Tag::sigmoid, "sigmoid", [](const Real& x) { return Real(1 / (1 + mp::exp(-x))); });
}
NumericFn NumericFn::tanh() {
  return make(Tag::tanh, "tanh", [](const Real& x) { return Real(mp::tanh(x)); });
}
NumericFn NumericFn::silu() {
  return make(Tag::silu, "silu", [](const Real& x) { return Real(x / (1 + mp::exp(-x))); });
}
NumericFn NumericFn::algebraic_sigmoid() {
  return make(Tag::algebraic_sigmoid, "algebraic_sigmoid",
              [](const Real& x) { return Real(x / mp::sqrt(1 + x * x)); });
}
NumericFn NumericFn::custom(std::string name, std::function<Real(const Real&)> f) {
  return make(Tag::custom, std::move(name), std::move(f));
}

NumericFn NumericFn::by_name(std::string_view name) {
  static const std::vector<std::pair<std::string_view, NumericFn (*)()>> table = {
      {"exp", &NumericFn::exp},         {"log", &NumericFn::log},
      {"arctan", &NumericFn::arctan},   {"arccot", &NumericFn::arccot},
      {"cot", &NumericFn::cot},         {"gaussian", &NumericFn::gaussian},
      {"cos", &NumericFn::cos},         {"arccos", &NumericFn::arccos},
      {"sigmoid", &NumericFn::sigmoid}, {"tanh", &NumericFn::tanh},
      {"silu", &NumericFn::silu},       {"algebraic_sigmoid", &NumericFn::algebraic_sigmoid},
  };
  for (const auto& [n, f] : table) {
    if (n == name) return f();
  }
  if (name == "square") return custom("square", [](const Real& x) { return Real(x * x); });
  throw InputError("unknown function '" + std::string(name) + "'");
}

std::string_view name(IdentityTag tag) {
  switch (tag) {
    case IdentityTag::exp_mul: return "exp_mul";
    case IdentityTag::gaussian_pow4: return "gaussian_pow4";
    case IdentityTag::arctan_cubic: return "arctan_cubic";
    case IdentityTag::cosine_quad: return "cosine_quad";
  }
  return "?";
}

IdentityTag identity_from_name(std::string_view text) {
  for (auto tag : {IdentityTag::exp_mul, IdentityTag::gaussian_pow4, IdentityTag::arctan_cubic,
                   IdentityTag::cosine_quad}) {
    if (name(tag) == text) return tag;
  }
  throw InputError("unknown identity '" + std::string(text) + "'");
}

namespace {

void need(bool ok, IdentityTag tag, const std::string& what) {
  if (!ok) throw DomainError(std::string(name(tag)) + ": " + what);
}

Real cosine_rhs(const Real& x) { return (mp::cos(2 * mp::acos(x)) - 1) / 2; }

}  // namespace

IdentitySides identity_sides(IdentityTag tag, std::span<const Real> p) {
  const std::size_t arity = tag == IdentityTag::exp_mul ? 2 : 1;
  need(p.size() == arity, tag, "expected " + std::to_string(arity) + " coordinates");
  switch (tag) {
    case IdentityTag::exp_mul: {
      const Real &x = p[0], &y = p[1];
      need(x > 0 && y > 0, tag, "needs x, y > 0");
      const Real z = x * y;
      return {mp::log(x + 1) + mp::log(y + 1), mp::log((z + 1) + x + y)};
    }
    case IdentityTag::gaussian_pow4: {
      const Real& x = p[0];
      need(x > 0 && x < 1, tag, "needs 0 < x < 1");
      const NumericFn f = NumericFn::gaussian();
      const Real preimage = mp::sqrt(-mp::log(x));
      return {f(2 * preimage), x * x * x * x};
    }
    case IdentityTag::arctan_cubic: {
      const Real& x = p[0];
      need(x > 0, tag, "needs x > 0");
      const NumericFn acot = NumericFn::arccot();
      return {4 * x * x * x + 3 * x, NumericFn::cot()(2 * acot(2 * x) - acot(x))};
    }
    case IdentityTag::cosine_quad: {
      const Real& x = p[0];
      need(x > -1 && x < 1, tag, "needs -1 < x < 1");
      return {cosine_rhs(x), x * x - 1};
    }
  }
  throw DomainError("unknown identity");
}

Real relative_error(const Real& a, const Real& b) {
  const Real scale = std::max(Real(mp::abs(a)), Real(mp::abs(b)));
  if (scale == 0) return 0;
  return mp::abs(a - b) / scale;
}

std::string IdentityReport::str() const {
  io::Json j{{"tag", std::string(name(tag))},
             {"samples", samples},
             {"tol", tol},
             {"max_rel_err", max_rel_err},
             {"pass", pass},
             {"rhs", rhs_polynomial}};
  if (fitted) j["fitted"] = *fitted;
  if (stated_max_rel_err) j["stated_max_rel_err"] = *stated_max_rel_err;
  return j.dump();
}

namespace {

/// The quadratic through the right side at -1/2, 0 and 1/2, with each
/// coefficient snapped to the nearest fraction of denominator at most 12.
std::optional<Polynomial> fit_cosine() {
  const Real h("0.5");
  const Real ym = cosine_rhs(-h), y0 = cosine_rhs(Real(0)), yp = cosine_rhs(h);
  const std::vector<Real> coeffs = {y0, (yp - ym) / (2 * h), (yp + ym - 2 * y0) / (2 * h * h)};
  Vector exact;
  for (const auto& c : coeffs) {
    std::optional<Rational> snapped;
    for (long den = 1; den <= 12 && !snapped; ++den) {
      const Real scaled = mp::round(c * den);
      if (mp::abs(c * den - scaled) < Real("1e-40")) {
        snapped = Rational(BigInt(scaled.convert_to<long>()), BigInt(den));
      }
    }
    if (!snapped) return std::nullopt;
    exact.push_back(*snapped);
  }
  return Polynomial(std::move(exact));
}

}  // namespace

IdentityReport verify_identity(IdentityTag tag, std::size_t samples, double tol,
                               std::uint64_t seed) {
  IdentityReport report{tag, samples, tol, 0, false, {}, {}, {}};
  std::mt19937_64 rng(seed);
  double lo = 0, hi = 10;
  switch (tag) {
    case IdentityTag::exp_mul:
      report.rhs_polynomial = "log((xy + 1) + x + y)";
      break;
    case IdentityTag::gaussian_pow4:
      hi = 1;
      report.rhs_polynomial = "x^4";
      break;
    case IdentityTag::arctan_cubic:
      report.rhs_polynomial = "4x^3 + 3x";
      break;
    case IdentityTag::cosine_quad:
      lo = -1;
      hi = 1;
      break;
  }
  std::uniform_real_distribution<double> dist(lo, hi);
  auto draw = [&] {
    double v = 0;
    do v = dist(rng);
    while (v <= lo || v >= hi);
    return Real(v);
  };

  std::optional<Polynomial> fit;
  Real stated_worst = 0;
  if (tag == IdentityTag::cosine_quad) {
    fit = fit_cosine();
    report.fitted = fit ? fit->str() : "no low-height quadratic";
    report.rhs_polynomial = report.fitted.value();
  }
  Real worst = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<Real> point = {draw()};
    if (tag == IdentityTag::exp_mul) point.push_back(draw());
    const IdentitySides sides = identity_sides(tag, point);
    Real rhs = sides.rhs;
    if (tag == IdentityTag::cosine_quad) {
      const Real& x = point[0];
      stated_worst = std::max(stated_worst, relative_error(sides.lhs, 2 * x * x - 1));
      if (fit) {
        rhs = 0;
        for (std::size_t i = fit->coeffs().size(); i-- > 0;) {
          rhs = rhs * x + to_real(fit->coeffs()[i]);
        }
      }
    }
    worst = std::max(worst, relative_error(sides.lhs, rhs));
  }
  if (tag == IdentityTag::cosine_quad) report.stated_max_rel_err = stated_worst.convert_to<double>();
  report.max_rel_err = worst.convert_to<double>();
  report.pass = worst <= Real(tol) && (tag != IdentityTag::cosine_quad || fit.has_value());
  return report;
}

std::optional<MidpointWitness> midpoint_witness(const NumericFn& f, const Rational& a,
                                                const Rational& b, std::size_t depth) {
  if (!(a < b)) throw InputError("midpoint_witness needs a < b, got " + a.str() + ", " + b.str());
  const Real eps = std::numeric_limits<Real>::epsilon();
  for (std::size_t k = 0; k <= depth; ++k) {
    const BigInt cells = BigInt(1) << static_cast<mp_bitcnt_t>(k);
    const unsigned long n = cells.get_ui();
    std::vector<Rational> grid;
    std::vector<Real> values;
    for (unsigned long i = 0; i <= n; ++i) {
      grid.push_back(a + (b - a) * Rational(BigInt(i), cells));
      values.push_back(f(to_real(grid.back())));
    }
    for (unsigned long width = n; width >= 1; --width) {
      for (unsigned long i = 0; i + width <= n; ++i) {
        const unsigned long j = i + width;
        if (k > 0 && i % 2 == 0 && j % 2 == 0) continue;  // seen at depth k - 1
        const Rational mid = (grid[i] + grid[j]) * Rational(1, 2);
        const Real fm = f(to_real(mid));
        const Real gap = mp::abs(fm - (values[i] + values[j]) / 2);
        const Real scale = std::max({Real(1), Real(mp::abs(fm)), Real(mp::abs(values[i])),
                                     Real(mp::abs(values[j]))});
        if (gap > 10 * eps * scale) return MidpointWitness{grid[i], grid[j], gap};
      }
    }
  }
  return std::nullopt;
}

NumericFn build_fbar(const NumericFn& f, const Rational& c, const Rational& d) {
  if (c == d) throw InputError("build_fbar needs c != d, got c = d = " + c.str());
  const Real rc = to_real(c), width = to_real(d) - rc;
  auto hat = [f, rc, width](const Real& x) { return f(rc + width * x); };
  const Real at0 = hat(Real(0)), at1 = hat(Real(1));
  return NumericFn::custom("bar " + f.name, [hat, at0, at1](const Real& x) {
    return Real((hat(x) - at0) + (hat(1 - x) - at1));
  });
}

}  // namespace plreach::gadgets
