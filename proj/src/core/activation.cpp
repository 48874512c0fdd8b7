#include "plreach/core/activation.hpp"

#include <string>
#include <utility>

#include "plreach/core/errors.hpp"

namespace plreach {

namespace {

Piece make_piece(std::optional<Rational> lo, bool lo_closed,
                 std::optional<Rational> hi, bool hi_closed, Rational slope,
                 Rational intercept) {
  return Piece{std::move(lo), lo_closed,         std::move(hi),
               hi_closed,     std::move(slope), std::move(intercept)};
}

}  // namespace

bool Piece::contains(const Rational& x) const {
  if (lo) {
    if (x < *lo || (x == *lo && !lo_closed)) return false;
  }
  if (hi) {
    if (x > *hi || (x == *hi && !hi_closed)) return false;
  }
  return true;
}

void validate_pieces(const std::vector<Piece>& pieces) {
  if (pieces.empty()) throw InputError("activation has no pieces");
  if (pieces.front().lo) {
    throw InputError("first piece must start at -infinity");
  }
  if (pieces.back().hi) throw InputError("last piece must end at +infinity");
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Piece& p = pieces[i];
    if (!p.lo && p.lo_closed) {
      throw InputError("piece " + std::to_string(i) +
                       ": infinite bound cannot be closed");
    }
    if (!p.hi && p.hi_closed) {
      throw InputError("piece " + std::to_string(i) +
                       ": infinite bound cannot be closed");
    }
    if (p.lo && p.hi) {
      if (*p.lo > *p.hi) {
        throw InputError("piece " + std::to_string(i) + ": lo > hi");
      }
      if (*p.lo == *p.hi && !(p.lo_closed && p.hi_closed)) {
        throw InputError("piece " + std::to_string(i) +
                         ": degenerate piece must be a closed point");
      }
    }
    if (i + 1 < pieces.size()) {
      const Piece& q = pieces[i + 1];
      if (!p.hi || !q.lo) {
        throw InputError("pieces " + std::to_string(i) + " and " +
                         std::to_string(i + 1) + " are not adjacent");
      }
      if (*p.hi != *q.lo) {
        throw InputError("pieces " + std::to_string(i) + " and " +
                         std::to_string(i + 1) + " leave a gap or overlap");
      }
      if (p.hi_closed == q.lo_closed) {
        throw InputError("boundary between pieces " + std::to_string(i) +
                         " and " + std::to_string(i + 1) +
                         " must belong to exactly one side");
      }
    }
  }
}

Activation::Activation(ActivationKind kind, std::vector<Piece> pieces,
                       std::vector<Rational> params)
    : kind_(kind), pieces_(std::move(pieces)), params_(std::move(params)) {
  validate_pieces(pieces_);
}

Activation Activation::id() {
  return {ActivationKind::Id,
          {make_piece(std::nullopt, false, std::nullopt, false, 1, 0)},
          {}};
}

Activation Activation::relu() {
  return {ActivationKind::Relu,
          {make_piece(std::nullopt, false, Rational(0), false, 0, 0),
           make_piece(Rational(0), true, std::nullopt, false, 1, 0)},
          {}};
}

Activation Activation::leaky_relu(const Rational& alpha) {
  return {ActivationKind::LeakyRelu,
          {make_piece(std::nullopt, false, Rational(0), false, alpha, 0),
           make_piece(Rational(0), true, std::nullopt, false, 1, 0)},
          {alpha}};
}

Activation Activation::heaviside() {
  return {ActivationKind::Heaviside,
          {make_piece(std::nullopt, false, Rational(0), false, 0, 0),
           make_piece(Rational(0), true, std::nullopt, false, 0, 1)},
          {}};
}

Activation Activation::sign() {
  return {ActivationKind::Sign,
          {make_piece(std::nullopt, false, Rational(0), false, 0, -1),
           make_piece(Rational(0), true, Rational(0), true, 0, 0),
           make_piece(Rational(0), false, std::nullopt, false, 0, 1)},
          {}};
}

Activation Activation::abs() {
  return {ActivationKind::Abs,
          {make_piece(std::nullopt, false, Rational(0), false, -1, 0),
           make_piece(Rational(0), true, std::nullopt, false, 1, 0)},
          {}};
}

Activation Activation::hard_sigmoid(const Rational& alpha) {
  if (alpha.sign() <= 0) throw InputError("hard_sigmoid needs alpha > 0");
  return {ActivationKind::HardSigmoid,
          {make_piece(std::nullopt, false, -alpha, false, 0, -1),
           make_piece(-alpha, true, alpha, true, alpha.inverse(), 0),
           make_piece(alpha, false, std::nullopt, false, 0, 1)},
          {alpha}};
}

Activation Activation::custom(std::vector<Piece> pieces) {
  return {ActivationKind::Custom, std::move(pieces), {}};
}

std::string_view Activation::name() const {
  switch (kind_) {
    case ActivationKind::Id: return "id";
    case ActivationKind::Relu: return "relu";
    case ActivationKind::LeakyRelu: return "leaky_relu";
    case ActivationKind::Heaviside: return "heaviside";
    case ActivationKind::Sign: return "sign";
    case ActivationKind::Abs: return "abs";
    case ActivationKind::HardSigmoid: return "hard_sigmoid";
    case ActivationKind::Custom: return "custom";
  }
  return "custom";
}

std::size_t Activation::piece_index(const Rational& x) const {
  // Pieces are sorted, so the first one whose upper end admits x wins.
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const Piece& p = pieces_[i];
    if (!p.hi || x < *p.hi || (x == *p.hi && p.hi_closed)) return i;
  }
  return pieces_.size() - 1;
}

}  // namespace plreach
