#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "plreach/core/linear_spec.hpp"
#include "plreach/core/network.hpp"

namespace plreach::reductions::detail {

/// Collects the nodes of one layer over a previous layer of fixed width.
class LayerBuilder {
 public:
  explicit LayerBuilder(std::size_t in_width) : in_(in_width) {}

  std::size_t add(Vector w, Rational b, Activation act) {
    w.resize(in_);
    rows_.push_back(std::move(w));
    bias_.push_back(std::move(b));
    acts_.push_back(std::move(act));
    return rows_.size() - 1;
  }
  /// act(x_src + b)
  std::size_t add_unit(std::size_t src, Rational b, Activation act) {
    return add(unit(in_, src), std::move(b), std::move(act));
  }
  [[nodiscard]] std::size_t size() const { return rows_.size(); }

  Layer build() const {
    return {Matrix::from_rows(rows_, in_), bias_, acts_};
  }

 private:
  std::size_t in_;
  std::vector<Vector> rows_;
  Vector bias_;
  std::vector<Activation> acts_;
};

/// a . v >= r, or > r when strict.
struct GeRow {
  Vector a;
  Rational r;
  bool strict = false;
};

inline std::vector<GeRow> ge_rows(const LinearSpec& spec) {
  std::vector<GeRow> out;
  for (const auto& row : spec.constraints()) {
    Vector neg = row.coeffs;
    for (auto& c : neg) c = -c;
    switch (row.cmp) {
      case Comparator::Le:
        out.push_back({std::move(neg), -row.rhs, false});
        break;
      case Comparator::Lt:
        out.push_back({std::move(neg), -row.rhs, true});
        break;
      case Comparator::Eq:
        out.push_back({row.coeffs, row.rhs, false});
        out.push_back({std::move(neg), -row.rhs, false});
        break;
    }
  }
  return out;
}

/// a . v <= r, or < r when strict.
inline std::vector<GeRow> le_rows(const LinearSpec& spec) {
  std::vector<GeRow> out = ge_rows(spec);
  for (auto& row : out) {
    for (auto& c : row.a) c = -c;
    row.r = -row.r;
  }
  return out;
}

/// Dot product with a row over a prefix window, as layer weights.
inline Vector placed(const Vector& a, std::size_t offset, std::size_t width) {
  Vector w(width);
  for (std::size_t i = 0; i < a.size(); ++i) w[offset + i] = a[i];
  return w;
}

}  // namespace plreach::reductions::detail
