#pragma once

#include <compare>
#include <concepts>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include <gmpxx.h>

namespace plreach {

using BigInt = mpz_class;

/// Arbitrary-precision exact fraction, always kept in lowest terms with a
/// positive denominator. Equality is structural.
class Rational {
 public:
  Rational() = default;

  template <std::integral T>
  Rational(T v) {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_signed_v<T>) {
      value_ = static_cast<long>(v);
    } else {
      value_ = static_cast<unsigned long>(v);
    }
  }

  explicit Rational(const BigInt& integer) : value_(integer) {}
  Rational(const BigInt& num, const BigInt& den);
  explicit Rational(mpq_class v) : value_(std::move(v)) {
    value_.canonicalize();
  }

  /// Accepts "p", "p/q" and a leading sign; no whitespace, q != 0.
  static Rational parse(std::string_view text);

  /// Always "p/q" (integers as "p/1"), so the text form is unambiguous.
  [[nodiscard]] std::string str() const;

  [[nodiscard]] BigInt num() const { return value_.get_num(); }
  [[nodiscard]] BigInt den() const { return value_.get_den(); }
  [[nodiscard]] int sign() const { return sgn(value_); }
  [[nodiscard]] bool is_zero() const { return sign() == 0; }
  [[nodiscard]] bool is_integer() const { return value_.get_den() == 1; }
  [[nodiscard]] Rational abs() const { return Rational(::abs(value_)); }
  [[nodiscard]] Rational inverse() const;
  [[nodiscard]] double to_double() const { return value_.get_d(); }
  /// Encoding length used for instance sizes: sign bit plus the binary
  /// lengths of numerator and denominator.
  [[nodiscard]] std::size_t bit_size() const;

  [[nodiscard]] const mpq_class& raw() const { return value_; }

  Rational& operator+=(const Rational& o) {
    value_ += o.value_;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    value_ -= o.value_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    value_ *= o.value_;
    return *this;
  }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) {
    return Rational(mpq_class(-a.value_));
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return mpq_equal(a.value_.get_mpq_t(), b.value_.get_mpq_t()) != 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  mpq_class value_;
};

using Vector = std::vector<Rational>;

/// Binary length of |n|; zero has length 0.
std::size_t bit_length(const BigInt& n);

std::string to_string(const Vector& v);

}  // namespace plreach
