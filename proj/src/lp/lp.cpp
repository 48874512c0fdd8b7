#include "plreach/lp/lp.hpp"

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <stdexcept>
#include <thread>
#include <utility>

namespace plreach::lp {

namespace {

/// real + eps * epsilon, for a positive infinitesimal epsilon.
struct DeltaValue {
  Rational real;
  Rational eps;

  DeltaValue& operator+=(const DeltaValue& o) {
    real += o.real;
    eps += o.eps;
    return *this;
  }
  friend DeltaValue operator-(const DeltaValue& a, const DeltaValue& b) {
    return {a.real - b.real, a.eps - b.eps};
  }
  friend DeltaValue operator*(const Rational& c, const DeltaValue& d) {
    return {c * d.real, c * d.eps};
  }
  friend DeltaValue operator/(const DeltaValue& d, const Rational& c) {
    return {d.real / c, d.eps / c};
  }
  friend bool operator==(const DeltaValue&, const DeltaValue&) = default;
  friend std::strong_ordering operator<=>(const DeltaValue& a,
                                          const DeltaValue& b) {
    if (auto c = a.real <=> b.real; c != 0) return c;
    return a.eps <=> b.eps;
  }
};

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

/// Bounded-variable simplex in the style of general SMT arithmetic solvers:
/// each constraint row defines a slack variable s_r = a_r . x carrying the
/// bounds, the original variables are free, and Bland's rule (smallest
/// index first, both for the leaving and the entering variable) guarantees
/// termination.
class Tableau {
 public:
  Tableau(std::size_t num_vars, const std::vector<const LinearConstraint*>& rows)
      : num_original_(num_vars),
        num_total_(num_vars + rows.size()),
        coeffs_(rows.size(), Vector(num_vars + rows.size())),
        basic_(rows.size()),
        row_of_(num_vars + rows.size(), kNone),
        lower_(num_vars + rows.size()),
        upper_(num_vars + rows.size()),
        value_(num_vars + rows.size()) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const LinearConstraint& c = *rows[r];
      for (std::size_t j = 0; j < num_vars; ++j) coeffs_[r][j] = c.coeffs[j];
      const std::size_t slack = num_vars + r;
      basic_[r] = slack;
      row_of_[slack] = r;
      switch (c.cmp) {
        case Comparator::Le:
          upper_[slack] = DeltaValue{c.rhs, 0};
          break;
        case Comparator::Lt:
          upper_[slack] = DeltaValue{c.rhs, -1};
          break;
        case Comparator::Eq:
          lower_[slack] = DeltaValue{c.rhs, 0};
          upper_[slack] = DeltaValue{c.rhs, 0};
          break;
      }
    }
  }

  bool solve() {
    for (;;) {
      const std::size_t leaving = first_violated_basic();
      if (leaving == kNone) return true;
      const std::size_t r = row_of_[leaving];
      const bool below = lower_[leaving] && value_[leaving] < *lower_[leaving];
      const std::size_t entering = choose_entering(r, below);
      if (entering == kNone) return false;
      pivot_and_update(leaving, entering,
                       below ? *lower_[leaving] : *upper_[leaving]);
    }
  }

  /// Instantiates the infinitesimal with the largest value up to 1 that
  /// keeps every bound satisfied.
  Vector witness() const {
    Rational delta = 1;
    for (std::size_t v = 0; v < num_total_; ++v) {
      const DeltaValue& x = value_[v];
      if (lower_[v]) {
        const DeltaValue& l = *lower_[v];
        if (l.real < x.real && l.eps > x.eps) {
          delta = std::min(delta, (x.real - l.real) / (l.eps - x.eps));
        }
      }
      if (upper_[v]) {
        const DeltaValue& u = *upper_[v];
        if (x.real < u.real && x.eps > u.eps) {
          delta = std::min(delta, (u.real - x.real) / (x.eps - u.eps));
        }
      }
    }
    Vector out(num_original_);
    for (std::size_t j = 0; j < num_original_; ++j) {
      out[j] = value_[j].real + value_[j].eps * delta;
    }
    return out;
  }

 private:
  [[nodiscard]] bool violated(std::size_t v) const {
    return (lower_[v] && value_[v] < *lower_[v]) ||
           (upper_[v] && value_[v] > *upper_[v]);
  }

  [[nodiscard]] bool can_increase(std::size_t v) const {
    return !upper_[v] || value_[v] < *upper_[v];
  }
  [[nodiscard]] bool can_decrease(std::size_t v) const {
    return !lower_[v] || value_[v] > *lower_[v];
  }

  [[nodiscard]] std::size_t first_violated_basic() const {
    for (std::size_t v = 0; v < num_total_; ++v) {
      if (row_of_[v] != kNone && violated(v)) return v;
    }
    return kNone;
  }

  [[nodiscard]] std::size_t choose_entering(std::size_t r, bool raise) const {
    const Vector& row = coeffs_[r];
    for (std::size_t j = 0; j < num_total_; ++j) {
      if (row_of_[j] != kNone || row[j].is_zero()) continue;
      const bool positive = row[j].sign() > 0;
      if (raise ? (positive ? can_increase(j) : can_decrease(j))
                : (positive ? can_decrease(j) : can_increase(j))) {
        return j;
      }
    }
    return kNone;
  }

  void pivot_and_update(std::size_t leaving, std::size_t entering,
                        const DeltaValue& target) {
    const std::size_t r = row_of_[leaving];
    const DeltaValue theta = (target - value_[leaving]) / coeffs_[r][entering];
    value_[leaving] = target;
    value_[entering] += theta;
    for (std::size_t s = 0; s < coeffs_.size(); ++s) {
      if (s == r || coeffs_[s][entering].is_zero()) continue;
      value_[basic_[s]] += coeffs_[s][entering] * theta;
    }
    pivot(r, entering);
  }

  // Row r reads basic = sum_k a_k x_k; rewrite it as entering = ... and
  // substitute into every other row.
  void pivot(std::size_t r, std::size_t entering) {
    const std::size_t leaving = basic_[r];
    Vector& row = coeffs_[r];
    const Rational a = row[entering];
    const Rational neg_inv = -a.inverse();
    for (std::size_t k = 0; k < num_total_; ++k) {
      if (!row[k].is_zero()) row[k] *= neg_inv;
    }
    row[entering] = 0;
    row[leaving] = a.inverse();
    for (std::size_t s = 0; s < coeffs_.size(); ++s) {
      if (s == r) continue;
      Vector& other = coeffs_[s];
      if (other[entering].is_zero()) continue;
      const Rational c = other[entering];
      other[entering] = 0;
      for (std::size_t k = 0; k < num_total_; ++k) {
        if (!row[k].is_zero()) other[k] += c * row[k];
      }
    }
    basic_[r] = entering;
    row_of_[entering] = r;
    row_of_[leaving] = kNone;
  }

  std::size_t num_original_;
  std::size_t num_total_;
  std::vector<Vector> coeffs_;
  std::vector<std::size_t> basic_;
  std::vector<std::size_t> row_of_;
  std::vector<std::optional<DeltaValue>> lower_;
  std::vector<std::optional<DeltaValue>> upper_;
  std::vector<DeltaValue> value_;
};

}  // namespace

LpVerdict feasible(const LpProblem& problem) {
  std::vector<const LinearConstraint*> rows;
  for (const auto& c : problem.constraints()) {
    if (c.is_degenerate()) {
      const Vector zero(problem.num_vars());
      if (!c.holds(zero)) return {LpStatus::Infeasible, std::nullopt};
      continue;
    }
    rows.push_back(&c);
  }
  if (rows.empty()) {
    return {LpStatus::Feasible, Vector(problem.num_vars())};
  }
  Tableau tableau(problem.num_vars(), rows);
  if (!tableau.solve()) return {LpStatus::Infeasible, std::nullopt};
  Vector w = tableau.witness();
  if (!check_spec(problem, w)) {
    throw std::logic_error("simplex produced a witness that fails the problem");
  }
  return {LpStatus::Feasible, std::move(w)};
}

std::vector<LpVerdict> feasible_batch(std::span<const LpProblem> problems,
                                      unsigned threads) {
  std::vector<LpVerdict> out(problems.size());
  if (threads <= 1 || problems.size() <= 1) {
    for (std::size_t i = 0; i < problems.size(); ++i) out[i] = feasible(problems[i]);
    return out;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < problems.size(); i = next++) {
      out[i] = feasible(problems[i]);
    }
  };
  {
    std::vector<std::jthread> pool;
    const auto n = std::min<std::size_t>(threads, problems.size());
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  return out;
}

}  // namespace plreach::lp
