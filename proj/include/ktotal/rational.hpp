#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>

namespace ktotal {

// Exact arbitrary-precision arithmetic. Rationals are kept in lowest terms
// with positive denominator; all construction must go through make_rational
// or parse_rational (gmp does not canonicalize on construction).
using Int = mpz_class;
using Rational = mpq_class;

// num/den reduced to lowest terms, sign moved to the numerator. den != 0.
Rational make_rational(const Int& num, const Int& den);

// Accepts an optionally signed integer "p" or fraction "p/q" in base 10.
// Rejects anything else (whitespace, empty, zero denominator, stray chars).
Rational parse_rational(const std::string& text);

// Reduced form: "p/q", or just "p" when the denominator is 1.
std::string format_rational(const Rational& value);

// A rational extended with the two infinities, totally ordered
// -inf < every finite value < +inf.
class ExtendedValue {
 public:
  enum class Kind { MinusInf, Finite, PlusInf };

  ExtendedValue() : kind_(Kind::Finite), value_(0) {}

  static ExtendedValue finite(Rational v) {
    ExtendedValue e;
    e.kind_ = Kind::Finite;
    e.value_ = std::move(v);
    return e;
  }
  static ExtendedValue plus_inf() {
    ExtendedValue e;
    e.kind_ = Kind::PlusInf;
    return e;
  }
  static ExtendedValue minus_inf() {
    ExtendedValue e;
    e.kind_ = Kind::MinusInf;
    return e;
  }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }

  // Finite payloads only; throws otherwise.
  const Rational& value() const;

  // Multiplication by a positive rational (preserves infinity signs).
  ExtendedValue scaled(const Rational& positive_factor) const;

  // "p/q", "p", "+inf", or "-inf"; round-trips through parse_extended.
  std::string str() const;
  static ExtendedValue parse(const std::string& text);

  bool operator==(const ExtendedValue& o) const;
  std::strong_ordering operator<=>(const ExtendedValue& o) const;

 private:
  Kind kind_;
  Rational value_;
};

}  // namespace ktotal
