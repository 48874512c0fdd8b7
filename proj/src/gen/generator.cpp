#include "plreach/gen/generator.hpp"

#include <bit>
#include <limits>
#include <utility>

#include "plreach/core/errors.hpp"

namespace plreach::gen {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed) {
  for (auto& s : state_) s = splitmix64(seed);
}

// xoshiro256**
std::uint64_t Rng::next() {
  const std::uint64_t result = std::rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = std::rotl(state_[3], 45);
  return result;
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t r = next();
  while (r >= limit) r = next();
  return lo + static_cast<std::int64_t>(r % span);
}

Rational Rng::rational(std::int64_t max_numerator, std::int64_t max_denominator) {
  const std::int64_t p = uniform(-max_numerator, max_numerator);
  const std::int64_t q = uniform(1, max_denominator);
  return Rational(BigInt(static_cast<long>(p)), BigInt(static_cast<long>(q)));
}

void validate(const GenConfig& cfg) {
  if (cfg.input_dim == 0 || cfg.depth == 0 || cfg.width == 0 || cfg.output_dim == 0) {
    throw InputError("generator dimensions must be at least 1");
  }
  if (cfg.activations.empty()) throw InputError("activation set is empty");
  if (cfg.max_numerator < 1 || cfg.max_denominator < 1) {
    throw InputError("numerator and denominator bounds must be positive");
  }
}

namespace {

Vector random_coeffs(Rng& rng, std::size_t n, const GenConfig& cfg) {
  Vector v(n);
  bool any = false;
  for (auto& c : v) {
    c = rng.rational(cfg.max_numerator, cfg.max_denominator);
    any = any || !c.is_zero();
  }
  if (!any) v[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 1))] = 1;
  return v;
}

/// Rows around `point`: each holds there with a non-negative slack, strict
/// rows with a positive one.
LinearSpec planted_spec(Rng& rng, std::size_t n, std::size_t rows,
                        const Vector& point, const GenConfig& cfg) {
  std::vector<LinearConstraint> out;
  for (std::size_t k = 0; k < rows; ++k) {
    LinearConstraint c{random_coeffs(rng, n, cfg), Comparator::Le, 0};
    const bool strict = rng.uniform(0, 1) == 1;
    Rational slack = Rational(BigInt(static_cast<long>(rng.uniform(0, 2 * cfg.max_denominator))),
                              BigInt(static_cast<long>(cfg.max_denominator)));
    if (strict) {
      c.cmp = Comparator::Lt;
      if (slack.is_zero()) slack = Rational(BigInt(1), BigInt(static_cast<long>(cfg.max_denominator)));
    }
    c.rhs = c.lhs(point) + slack;
    out.push_back(std::move(c));
  }
  return LinearSpec(n, std::move(out));
}

LinearSpec random_spec(Rng& rng, std::size_t n, std::size_t rows, const GenConfig& cfg) {
  std::vector<LinearConstraint> out;
  for (std::size_t k = 0; k < rows; ++k) {
    LinearConstraint c{random_coeffs(rng, n, cfg), Comparator::Le, 0};
    const std::int64_t kind = rng.uniform(0, 5);
    c.cmp = kind < 3 ? Comparator::Le : kind < 5 ? Comparator::Lt : Comparator::Eq;
    c.rhs = rng.rational(cfg.max_numerator, cfg.max_denominator);
    out.push_back(std::move(c));
  }
  return LinearSpec(n, std::move(out));
}

}  // namespace

ReachInstance generate(const GenConfig& cfg) {
  validate(cfg);
  Rng rng(cfg.seed);
  std::vector<Layer> layers;
  std::size_t prev = cfg.input_dim;
  for (std::size_t l = 0; l < cfg.depth; ++l) {
    const std::size_t w = l + 1 == cfg.depth ? cfg.output_dim : cfg.width;
    Layer layer{Matrix(w, prev), Vector(w), {}};
    for (std::size_t i = 0; i < w; ++i) {
      for (std::size_t j = 0; j < prev; ++j) {
        layer.weights(i, j) = rng.rational(cfg.max_numerator, cfg.max_denominator);
      }
      layer.bias[i] = rng.rational(cfg.max_numerator, cfg.max_denominator);
      const auto pick = rng.uniform(0, static_cast<std::int64_t>(cfg.activations.size()) - 1);
      layer.activations.push_back(cfg.activations[static_cast<std::size_t>(pick)]);
    }
    layers.push_back(std::move(layer));
    prev = w;
  }
  Network net(cfg.input_dim, std::move(layers));
  if (!cfg.planted) {
    LinearSpec in = random_spec(rng, cfg.input_dim, cfg.input_constraints, cfg);
    LinearSpec out = random_spec(rng, cfg.output_dim, cfg.output_constraints, cfg);
    return ReachInstance(std::move(net), std::move(in), std::move(out));
  }
  Vector x(cfg.input_dim);
  for (auto& v : x) v = rng.rational(cfg.max_numerator, cfg.max_denominator);
  const Vector y = evaluate(net, x);
  LinearSpec in = planted_spec(rng, cfg.input_dim, cfg.input_constraints, x, cfg);
  LinearSpec out = planted_spec(rng, cfg.output_dim, cfg.output_constraints, y, cfg);
  return ReachInstance(std::move(net), std::move(in), std::move(out));
}

}  // namespace plreach::gen
