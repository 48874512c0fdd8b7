#include "plreach/reductions/interval.hpp"

#include <algorithm>

#include "builder.hpp"
#include "plreach/core/errors.hpp"
#include "plreach/reach/solver.hpp"
#include "plreach/reductions/equivalence.hpp"

namespace plreach::reductions {

using detail::LayerBuilder;

namespace {

const Rational half(1, 2);

LinearSpec open_interval(const Rational& lo, const Rational& hi) {
  return LinearSpec(1, {LinearConstraint::gt(Vector{1}, lo),
                        LinearConstraint{Vector{1}, Comparator::Lt, hi}});
}

Vector negated(Vector v) {
  for (auto& c : v) c = -c;
  return v;
}

}  // namespace

std::vector<ReachInstance> vip_to_connr(const ReachInstance& inst) {
  std::vector<ReachInstance> out;
  const std::size_t m = inst.network.output_dim();
  for (const auto& row : inst.output_spec.constraints()) {
    for (auto& neg : reach::negate(row)) {
      out.emplace_back(inst.network, inst.input_spec, LinearSpec(m, {std::move(neg)}));
    }
  }
  return out;
}

ReachInstance nnr_to_covip(const ReachInstance& inst, CovipVariant variant) {
  const std::size_t m = inst.network.output_dim();
  std::vector<detail::GeRow> rows = detail::le_rows(inst.output_spec);
  if (rows.empty()) rows.push_back({Vector(m), 0, false});
  const auto n = static_cast<long>(rows.size());
  std::vector<Layer> extra;
  LinearSpec out;

  switch (variant) {
    case CovipVariant::Heaviside: {
      // 1 on a satisfied non-strict row, 0 on a satisfied strict one.
      LayerBuilder a(m);
      Vector sum(rows.size());
      long closed = 0;
      for (std::size_t k = 0; k < rows.size(); ++k) {
        if (rows[k].strict) {
          a.add(rows[k].a, -rows[k].r, Activation::heaviside());
          sum[k] = -1;
        } else {
          a.add(negated(rows[k].a), rows[k].r, Activation::heaviside());
          sum[k] = 1;
          ++closed;
        }
      }
      LayerBuilder all(rows.size());
      all.add(std::move(sum), -Rational(closed), Activation::heaviside());
      extra = {a.build(), all.build()};
      out = open_interval(-half, half);
      break;
    }
    case CovipVariant::Sign: {
      LayerBuilder sigma(m);
      for (const auto& row : rows) sigma.add(negated(row.a), row.r, Activation::sign());
      LayerBuilder lambda(rows.size());
      for (std::size_t k = 0; k < rows.size(); ++k) {
        lambda.add_unit(k, rows[k].strict ? -half : half, Activation::sign());
      }
      LayerBuilder mu(rows.size());
      mu.add(Vector(rows.size(), Rational(1)), half - Rational(n), Activation::sign());
      LayerBuilder flag(1);
      flag.add_unit(0, 1, Activation::sign());
      extra = {sigma.build(), lambda.build(), mu.build(), flag.build()};
      out = open_interval(-half, half);
      break;
    }
    case CovipVariant::Relu: {
      LayerBuilder a(m);
      for (const auto& row : rows) {
        if (row.strict) {
          throw UnsupportedError(
              "a strict output row cannot be flagged by relu nodes; use heaviside or sign");
        }
        a.add(row.a, -row.r, Activation::relu());
      }
      LayerBuilder all(rows.size());
      all.add(Vector(rows.size(), Rational(1)), 0, Activation::relu());
      extra = {a.build(), all.build()};
      out = LinearSpec(1, {LinearConstraint::gt(Vector{1}, 0)});
      break;
    }
  }
  return {append_layers(inst.network, std::move(extra)), inst.input_spec, std::move(out)};
}

CovipVariant covip_variant(std::span<const ActivationKind> allowed) {
  auto has = [&](ActivationKind k) {
    return std::find(allowed.begin(), allowed.end(), k) != allowed.end();
  };
  if (has(ActivationKind::Heaviside)) return CovipVariant::Heaviside;
  if (has(ActivationKind::Sign)) return CovipVariant::Sign;
  if (has(ActivationKind::Relu)) return CovipVariant::Relu;
  throw UnsupportedError("the interval construction needs heaviside, sign or relu");
}

ReachInstance ne_to_vip(const Network& a, const Network& b, CovipVariant variant) {
  return nnr_to_covip(ne_to_connr(a, b), variant);
}

std::vector<NetworkPair> to_single_output(const NetworkPair& pair) {
  if (pair.first.output_dim() != pair.second.output_dim()) {
    throw InputError("networks have different output dimensions");
  }
  std::vector<NetworkPair> out;
  if (pair.first.output_dim() == 1) return {pair};
  for (std::size_t i = 0; i < pair.first.output_dim(); ++i) {
    const std::size_t keep[] = {i};
    out.push_back({restrict_outputs(pair.first, keep), restrict_outputs(pair.second, keep)});
  }
  return out;
}

std::vector<ReachInstance> to_single_output(const ReachInstance& vip) {
  if (vip.output_spec.size() <= 1) return {vip};
  std::vector<ReachInstance> out;
  for (const auto& row : vip.output_spec.constraints()) {
    out.emplace_back(vip.network, vip.input_spec,
                     LinearSpec(vip.output_spec.num_vars(), {row}));
  }
  return out;
}

}  // namespace plreach::reductions
