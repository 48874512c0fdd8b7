#include "csp_oracles.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>
#include <unsupported/Eigen/NonLinearOptimization>

namespace plreach::oracle {

std::optional<std::vector<std::optional<Rational>>> linear_forced(
    const csp::CspInstance& csp, const std::vector<std::pair<csp::Var, Rational>>& pins) {
  const std::size_t n = csp.num_vars();
  // Each row: coefficients for the n variables, then the right-hand side.
  std::vector<Vector> rows;
  auto row = [&] { return Vector(n + 1); };
  for (const auto& c : csp.constraints()) {
    if (const auto* p = std::get_if<csp::Plus>(&c)) {
      Vector r = row();
      r[p->u] += 1;
      r[p->v] += 1;
      r[p->w] -= 1;
      rows.push_back(std::move(r));
    } else if (const auto* o = std::get_if<csp::One>(&c)) {
      Vector r = row();
      r[o->u] = 1;
      r[n] = 1;
      rows.push_back(std::move(r));
    } else if (const auto* k = std::get_if<csp::Const>(&c)) {
      Vector r = row();
      r[k->u] = 1;
      r[n] = k->value;
      rows.push_back(std::move(r));
    }
  }
  for (const auto& [v, value] : pins) {
    Vector r = row();
    r[v] = 1;
    r[n] = value;
    rows.push_back(std::move(r));
  }
  // Reduced row echelon form.
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][col].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    const Rational inv = rows[rank][col].inverse();
    for (auto& x : rows[rank]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][col].is_zero()) continue;
      const Rational f = rows[i][col];
      for (std::size_t j = 0; j <= n; ++j) rows[i][j] -= f * rows[rank][j];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  for (std::size_t i = rank; i < rows.size(); ++i) {
    if (!rows[i][n].is_zero()) return std::nullopt;
  }
  std::vector<std::optional<Rational>> out(n);
  for (std::size_t i = 0; i < rank; ++i) {
    bool alone = true;
    for (std::size_t j = 0; j < n && alone; ++j) {
      alone = j == pivot_col[i] || rows[i][j].is_zero();
    }
    if (alone) out[pivot_col[i]] = rows[i][n];
  }
  return out;
}

Vector expand_shifts(const Vector& p, const std::vector<std::pair<BigInt, Rational>>& terms,
                     const Rational& linear, const Rational& constant) {
  Vector out(std::max<std::size_t>(p.size(), 2));
  for (const auto& [k, scale] : terms) {
    const Rational rk(k);
    // (x + k)^i = sum_j C(i, j) k^(i-j) x^j
    for (std::size_t i = 0; i < p.size(); ++i) {
      BigInt binom = 1;
      for (std::size_t j = 0; j <= i; ++j) {
        if (j > 0) binom = binom * static_cast<unsigned long>(i - j + 1) / static_cast<unsigned long>(j);
        Rational power = 1;
        for (std::size_t e = 0; e < i - j; ++e) power *= rk;
        out[j] += scale * p[i] * Rational(binom) * power;
      }
    }
  }
  out[1] += linear;
  out[0] += constant;
  while (!out.empty() && out.back().is_zero()) out.pop_back();
  return out;
}

double residual(const csp::CspInstance& csp, const std::vector<double>& x) {
  double worst = 0;
  for (const auto& c : csp.constraints()) {
    double r = 0;
    if (const auto* k = std::get_if<csp::Leq>(&c)) {
      r = std::max(0.0, x[k->u] - x[k->v]);
    } else if (const auto* k = std::get_if<csp::Plus>(&c)) {
      r = x[k->u] + x[k->v] - x[k->w];
    } else if (const auto* k = std::get_if<csp::One>(&c)) {
      r = x[k->u] - 1;
    } else if (const auto* k = std::get_if<csp::Const>(&c)) {
      r = x[k->u] - k->value.to_double();
    } else if (const auto* k = std::get_if<csp::Mul>(&c)) {
      r = x[k->u] * x[k->v] - x[k->w];
    } else {
      throw std::invalid_argument("numeric search does not support function graphs");
    }
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

namespace {

struct Problem {
  using Scalar = double;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;

  const csp::CspInstance* csp;
  Universe universe;
  double n;
  std::vector<double> consts;
  static constexpr double reach = 1000;
  [[nodiscard]] double lo() const { return 1 / (n + reach); }

  [[nodiscard]] int inputs() const { return static_cast<int>(csp->num_vars()); }
  [[nodiscard]] int values() const {
    return static_cast<int>(std::max(csp->constraints().size(), csp->num_vars()));
  }

  [[nodiscard]] double value(double t) const {
    switch (universe) {
      case Universe::Reals: return t;
      case Universe::NonNegative: return t * t;
      case Universe::UnitInterval: {
        const double c = std::cos(t);
        return lo() + (1 / n - lo()) * c * c;
      }
    }
    return t;
  }
  [[nodiscard]] double slope(double t) const {
    switch (universe) {
      case Universe::Reals: return 1;
      case Universe::NonNegative: return 2 * t;
      case Universe::UnitInterval: {
        return -2 * (1 / n - lo()) * std::cos(t) * std::sin(t);
      }
    }
    return 1;
  }

  int operator()(const Eigen::VectorXd& t, Eigen::VectorXd& f) const {
    f.setZero(values());
    const auto& cs = csp->constraints();
    for (std::size_t i = 0; i < cs.size(); ++i) {
      auto x = [&](csp::Var v) { return value(t[static_cast<Eigen::Index>(v)]); };
      const auto row = static_cast<Eigen::Index>(i);
      if (const auto* k = std::get_if<csp::Leq>(&cs[i])) {
        f[row] = std::max(0.0, x(k->u) - x(k->v));
      } else if (const auto* k = std::get_if<csp::Plus>(&cs[i])) {
        f[row] = x(k->u) + x(k->v) - x(k->w);
      } else if (const auto* k = std::get_if<csp::One>(&cs[i])) {
        f[row] = x(k->u) - 1;
      } else if (const auto* k = std::get_if<csp::Const>(&cs[i])) {
        f[row] = x(k->u) - consts[i];
      } else if (const auto* k = std::get_if<csp::Mul>(&cs[i])) {
        f[row] = x(k->u) * x(k->v) - x(k->w);
      }
    }
    return 0;
  }

  int df(const Eigen::VectorXd& t, Eigen::MatrixXd& jac) const {
    jac.setZero(values(), inputs());
    const auto& cs = csp->constraints();
    auto at = [&](csp::Var v) { return static_cast<Eigen::Index>(v); };
    auto x = [&](csp::Var v) { return value(t[at(v)]); };
    auto d = [&](csp::Var v) { return slope(t[at(v)]); };
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const auto row = static_cast<Eigen::Index>(i);
      if (const auto* k = std::get_if<csp::Leq>(&cs[i])) {
        if (x(k->u) > x(k->v)) {
          jac(row, at(k->u)) += d(k->u);
          jac(row, at(k->v)) -= d(k->v);
        }
      } else if (const auto* k = std::get_if<csp::Plus>(&cs[i])) {
        jac(row, at(k->u)) += d(k->u);
        jac(row, at(k->v)) += d(k->v);
        jac(row, at(k->w)) -= d(k->w);
      } else if (const auto* k = std::get_if<csp::One>(&cs[i])) {
        jac(row, at(k->u)) += d(k->u);
      } else if (const auto* k = std::get_if<csp::Const>(&cs[i])) {
        jac(row, at(k->u)) += d(k->u);
      } else if (const auto* k = std::get_if<csp::Mul>(&cs[i])) {
        jac(row, at(k->u)) += x(k->v) * d(k->u);
        jac(row, at(k->v)) += x(k->u) * d(k->v);
        jac(row, at(k->w)) -= d(k->w);
      }
    }
    return 0;
  }
};

}  // namespace

SearchResult numeric_search(const csp::CspInstance& csp, Universe universe,
                            std::uint64_t seed, std::size_t restarts, double n) {
  Problem problem{&csp, universe, n, {}};
  for (const auto& c : csp.constraints()) {
    if (std::holds_alternative<csp::FnGraph>(c)) {
      throw std::invalid_argument("numeric search does not support function graphs");
    }
    const auto* k = std::get_if<csp::Const>(&c);
    problem.consts.push_back(k ? k->value.to_double() : 0.0);
  }
  SearchResult best{std::numeric_limits<double>::infinity(), {}};
  if (csp.num_vars() == 0) return {residual(csp, {}), {}};
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> start(0.0, 2.0);
  for (std::size_t r = 0; r < restarts && best.residual > 1e-12; ++r) {
    Eigen::VectorXd t(static_cast<Eigen::Index>(csp.num_vars()));
    for (auto& v : t) v = start(rng);
    Eigen::LevenbergMarquardt<Problem> lm(problem);
    lm.parameters.maxfev = 2000;
    lm.parameters.xtol = 1e-15;
    lm.parameters.ftol = 1e-15;
    lm.minimize(t);
    std::vector<double> values;
    for (auto v : t) values.push_back(problem.value(v));
    const double res = residual(csp, values);
    if (res < best.residual) best = {res, std::move(values)};
  }
  return best;
}

}  // namespace plreach::oracle
