#include "plreach/gadgets/encode.hpp"

#include "plreach/core/errors.hpp"

namespace plreach::gadgets {

using csp::Constraint;
using csp::CspInstance;
using csp::Var;

namespace {

struct Recorder {
  CspInstance& csp;
  std::vector<Constraint> emitted;

  void add(Constraint c) {
    csp.add(c);
    emitted.push_back(std::move(c));
  }
};

void chain(Recorder& r, const BigInt& m, Var base, Var target) {
  const std::size_t top = bit_length(m) - 1;
  const bool single_bit = mpz_popcount(m.get_mpz_t()) == 1;
  std::vector<Var> powers{base};
  for (std::size_t k = 1; k <= top; ++k) {
    const Var next = k == top && single_bit ? target : r.csp.fresh();
    r.add(csp::Plus{powers.back(), powers.back(), next});
    powers.push_back(next);
  }
  if (single_bit) return;
  // Add the lower set bits onto the top power, lowest bit last.
  std::size_t lowest = 0;
  while (mpz_tstbit(m.get_mpz_t(), lowest) == 0) ++lowest;
  Var acc = powers[top];
  for (std::size_t k = top; k-- > 0;) {
    if (mpz_tstbit(m.get_mpz_t(), k) == 0) continue;
    const Var next = k == lowest ? target : r.csp.fresh();
    r.add(csp::Plus{acc, powers[k], next});
    acc = next;
  }
}

}  // namespace

std::vector<Constraint> encode_integer(CspInstance& csp, const BigInt& n, Var var) {
  if (n < 1) throw InputError("encode_integer needs n >= 1, got " + n.get_str());
  Recorder r{csp, {}};
  if (n == 1) {
    r.add(csp::One{var});
    return r.emitted;
  }
  const Var one = csp.fresh();
  r.add(csp::One{one});
  chain(r, n, one, var);
  return r.emitted;
}

std::vector<Constraint> encode_multiple(CspInstance& csp, const BigInt& m, Var base,
                                        Var target) {
  if (m < 2) throw InputError("encode_multiple needs m >= 2, got " + m.get_str());
  Recorder r{csp, {}};
  chain(r, m, base, target);
  return r.emitted;
}

Var make_zero(CspInstance& csp) {
  const Var o = csp.fresh();
  const Var z = csp.fresh();
  csp.add(csp::One{o});
  csp.add(csp::Plus{z, o, o});
  return z;
}

std::vector<Constraint> encode_rational_coefficient(CspInstance& csp, const Rational& q,
                                                    Var x, Var t, Var zero) {
  Recorder r{csp, {}};
  if (q.is_zero()) {
    r.add(csp::Plus{t, zero, zero});
    return r.emitted;
  }
  if (q == 1) {
    r.add(csp::Plus{x, zero, t});
    return r.emitted;
  }
  const BigInt p = abs(q.num());
  const BigInt den = q.den();
  const bool negative = q.sign() < 0;
  // t' = |q| x, stored in t directly when q > 0.
  const Var t_abs = negative ? csp.fresh() : t;
  if (den == 1) {
    // p >= 2 here unless q = -1.
    if (p == 1) {
      r.add(csp::Plus{x, zero, t_abs});
    } else {
      chain(r, p, x, t_abs);
    }
  } else {
    Var u = x;
    if (p > 1) {
      u = csp.fresh();
      chain(r, p, x, u);
    }
    chain(r, den, t_abs, u);
  }
  if (negative) r.add(csp::Plus{t, t_abs, zero});
  return r.emitted;
}

}  // namespace plreach::gadgets
