#include "plreach/gadgets/interpretation.hpp"

#include <utility>

#include "plreach/core/errors.hpp"

namespace plreach::gadgets {

using csp::Const;
using csp::CspInstance;
using csp::Leq;
using csp::Mul;
using csp::Plus;
using csp::Var;

std::vector<Var> instantiate(CspInstance& target, const Template& t,
                             std::span<const Var> args) {
  if (args.size() != t.slots) {
    throw InputError("template has " + std::to_string(t.slots) + " slots, got " +
                     std::to_string(args.size()) + " arguments");
  }
  std::vector<Var> map(args.begin(), args.end());
  std::vector<Var> fresh;
  for (Var v = t.slots; v < t.body.num_vars(); ++v) {
    map.push_back(target.fresh());
    fresh.push_back(map.back());
  }
  for (const auto& c : t.body.constraints()) {
    std::visit(
        [&](const auto& k) {
          using K = std::decay_t<decltype(k)>;
          K r = k;
          if constexpr (std::is_same_v<K, Leq>) {
            r.u = map[k.u];
            r.v = map[k.v];
          } else if constexpr (std::is_same_v<K, csp::One> || std::is_same_v<K, Const>) {
            r.u = map[k.u];
          } else if constexpr (std::is_same_v<K, csp::FnGraph>) {
            r.u = map[k.u];
            r.v = map[k.v];
          } else {
            r.u = map[k.u];
            r.v = map[k.v];
            r.w = map[k.w];
          }
          target.add(r);
        },
        c);
  }
  return fresh;
}

namespace {

/// Template with `slots` arguments; helpers are added with `fresh`.
struct Builder {
  Template t;
  explicit Builder(std::size_t slots) : t{slots, CspInstance(slots)} {}
  Var fresh() { return t.body.fresh(); }
  Builder& add(csp::Constraint c) {
    t.body.add(std::move(c));
    return *this;
  }
};

std::vector<Var> concat(std::initializer_list<const std::vector<Var>*> parts) {
  std::vector<Var> out;
  for (const auto* p : parts) out.insert(out.end(), p->begin(), p->end());
  return out;
}

}  // namespace

Interpreted interpret(const CspInstance& source, const Interpretation& interp) {
  const std::size_t d = interp.dimension;
  Interpreted out{CspInstance(source.num_vars() * d), {}};
  for (Var v = 0; v < source.num_vars(); ++v) {
    std::vector<Var> tuple(d);
    for (std::size_t i = 0; i < d; ++i) tuple[i] = v * d + i;
    out.coords.push_back(std::move(tuple));
  }
  for (Var v = 0; v < source.num_vars(); ++v) instantiate(out.csp, interp.domain, out.coords[v]);
  const auto& x = out.coords;
  for (const auto& c : source.constraints()) {
    if (const auto* k = std::get_if<Leq>(&c)) {
      instantiate(out.csp, interp.leq, concat({&x[k->u], &x[k->v]}));
    } else if (const auto* k = std::get_if<Plus>(&c)) {
      instantiate(out.csp, interp.plus, concat({&x[k->u], &x[k->v], &x[k->w]}));
    } else if (const auto* k = std::get_if<csp::One>(&c)) {
      instantiate(out.csp, interp.one, x[k->u]);
    } else if (const auto* k = std::get_if<Const>(&c)) {
      instantiate(out.csp, interp.constant(k->value), x[k->u]);
    } else if (const auto* k = std::get_if<Mul>(&c)) {
      instantiate(out.csp, interp.mul, concat({&x[k->u], &x[k->v], &x[k->w]}));
    } else {
      throw UnsupportedError("function graphs cannot be interpreted: " + csp::describe(c));
    }
  }
  return out;
}

std::optional<Vector> lift(const Interpreted& out, const Interpretation& interp,
                           std::span<const Rational> solution) {
  csp::Partial known(out.csp.num_vars());
  for (Var v = 0; v < out.coords.size(); ++v) {
    const Vector tuple = interp.preimage(solution[v]);
    for (std::size_t i = 0; i < tuple.size(); ++i) known[out.coords[v][i]] = tuple[i];
  }
  known = csp::propagate(out.csp, std::move(known));
  Vector full;
  full.reserve(known.size());
  for (auto& k : known) {
    if (!k) return std::nullopt;
    full.push_back(std::move(*k));
  }
  return full;
}

Vector project(const Interpreted& out, const Interpretation& interp,
               std::span<const Rational> solution) {
  Vector back;
  for (const auto& tuple : out.coords) {
    Vector values;
    for (Var v : tuple) values.push_back(solution[v]);
    back.push_back(interp.image(values));
  }
  return back;
}

Interpretation positive_interpretation() {
  Interpretation I;
  I.dimension = 2;
  I.coordinate_map = "(a, b) -> a - b";
  {
    Builder b(2);
    const Var z = b.fresh();
    b.add(Mul{0, 1, z}).add(Plus{z, z, z});
    I.domain = b.t;
  }
  {
    Builder b(2);
    b.add(csp::One{0});
    I.one = b.t;
  }
  I.constant = [](const Rational& q) {
    Builder b(2);
    if (q.sign() >= 0) {
      b.add(Const{0, q}).add(Const{1, 0});
    } else {
      b.add(Const{0, 0}).add(Const{1, -q});
    }
    return b.t;
  };
  {
    // x = (0, 1), y = (2, 3), z = (4, 5)
    Builder b(6);
    const Var eps = b.fresh(), s1 = b.fresh(), s2 = b.fresh();
    b.add(Plus{0, 2, s1}).add(Plus{4, eps, s1}).add(Plus{1, 3, s2}).add(Plus{5, eps, s2});
    I.plus = b.t;
  }
  {
    Builder b(6);
    const Var ac = b.fresh(), bd = b.fresh(), ad = b.fresh(), bc = b.fresh();
    const Var s1 = b.fresh(), s2 = b.fresh(), eps = b.fresh();
    b.add(Mul{0, 2, ac}).add(Mul{1, 3, bd}).add(Mul{0, 3, ad}).add(Mul{1, 2, bc});
    b.add(Plus{ac, bd, s1}).add(Plus{4, eps, s1});
    b.add(Plus{ad, bc, s2}).add(Plus{5, eps, s2});
    I.mul = b.t;
  }
  {
    // a - b <= c - d  iff  a + d <= c + b
    Builder b(4);
    const Var s1 = b.fresh(), s2 = b.fresh();
    b.add(Plus{0, 3, s1}).add(Plus{2, 1, s2}).add(Leq{s1, s2});
    I.leq = b.t;
  }
  I.image = [](std::span<const Rational> t) { return t[0] - t[1]; };
  I.preimage = [](const Rational& x) {
    return x.sign() >= 0 ? Vector{x, 0} : Vector{0, -x};
  };
  return I;
}

Interpretation shift_interpretation(const BigInt& n) {
  const Rational rn(n);
  Interpretation I;
  I.dimension = 1;
  I.coordinate_map = "a -> a - " + n.get_str();
  {
    Builder b(1);
    const Var c = b.fresh();
    b.add(Const{c, rn}).add(Leq{c, 0});
    I.domain = b.t;
  }
  I.constant = [rn](const Rational& q) {
    Builder b(1);
    b.add(Const{0, q + rn});
    return b.t;
  };
  I.one = I.constant(1);
  {
    // a + b = c + n
    Builder b(3);
    const Var t = b.fresh(), c = b.fresh();
    b.add(Plus{0, 1, t}).add(Const{c, rn}).add(Plus{2, c, t});
    I.plus = b.t;
  }
  {
    // (a - n)(b - n) = c - n  iff  ab + n^2 + n = c + na + nb
    Builder b(3);
    const Var m = b.fresh(), k = b.fresh(), s1 = b.fresh(), c = b.fresh(), na = b.fresh(),
              nb = b.fresh(), s2 = b.fresh();
    b.add(Mul{0, 1, m}).add(Const{k, rn * rn + rn}).add(Plus{m, k, s1});
    b.add(Const{c, rn}).add(Mul{c, 0, na}).add(Mul{c, 1, nb}).add(Plus{na, nb, s2});
    b.add(Plus{2, s2, s1});
    I.mul = b.t;
  }
  {
    Builder b(2);
    b.add(Leq{0, 1});
    I.leq = b.t;
  }
  I.image = [rn](std::span<const Rational> t) { return t[0] - rn; };
  I.preimage = [rn](const Rational& x) { return Vector{x + rn}; };
  return I;
}

Interpretation reciprocal_interpretation(const BigInt& n) {
  Interpretation I;
  I.dimension = 1;
  I.coordinate_map = "u -> 1/u on (0, 1/" + n.get_str() + "]";
  I.domain = Builder(1).t;
  I.constant = [](const Rational& q) {
    Builder b(1);
    // 0 has no reciprocal; the constant 0 is simply outside (0, 1/n].
    b.add(Const{0, q.is_zero() ? Rational(0) : q.inverse()});
    return b.t;
  };
  I.one = I.constant(1);
  {
    // 1/u + 1/v = 1/w  iff  vw + uw = uv
    Builder b(3);
    const Var m1 = b.fresh(), m2 = b.fresh(), m3 = b.fresh();
    b.add(Mul{1, 2, m1}).add(Mul{0, 2, m2}).add(Plus{m1, m2, m3}).add(Mul{0, 1, m3});
    I.plus = b.t;
  }
  {
    Builder b(3);
    b.add(Mul{0, 1, 2});
    I.mul = b.t;
  }
  {
    Builder b(2);
    b.add(Leq{1, 0});
    I.leq = b.t;
  }
  I.image = [](std::span<const Rational> t) { return t[0].inverse(); };
  I.preimage = [](const Rational& x) { return Vector{x.inverse()}; };
  return I;
}

Interpreted interpret_positive(const CspInstance& etr) {
  return interpret(etr, positive_interpretation());
}

UnitIntervalResult interpret_unit_interval(const CspInstance& etr_pos, const BigInt& n) {
  if (n < 1) throw InputError("interval bound n must be positive, got " + n.get_str());
  Interpreted shifted = interpret(etr_pos, shift_interpretation(n));
  Interpreted reciprocal = interpret(shifted.csp, reciprocal_interpretation(n));
  return {std::move(shifted), std::move(reciprocal)};
}

}  // namespace plreach::gadgets
