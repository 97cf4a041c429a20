#include "ktotal/rational.hpp"

#include <stdexcept>

namespace ktotal {

Rational make_rational(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  // Strict charset check: gmp's parser is lenient about whitespace and bases.
  std::size_t i = 0;
  auto digits = [&](std::size_t& pos) {
    std::size_t start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    return pos > start;
  };
  if (text[i] == '+' || text[i] == '-') ++i;
  if (!digits(i)) throw std::invalid_argument("bad rational literal: " + text);
  if (i < text.size()) {
    if (text[i] != '/') throw std::invalid_argument("bad rational literal: " + text);
    ++i;
    if (!digits(i) || i != text.size())
      throw std::invalid_argument("bad rational literal: " + text);
  }
  Rational r(text, 10);
  if (r.get_den() == 0)
    throw std::invalid_argument("zero denominator in rational literal: " + text);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& value) { return value.get_str(); }

const Rational& ExtendedValue::value() const {
  if (kind_ != Kind::Finite)
    throw std::logic_error("value() on an infinite extended value");
  return value_;
}

ExtendedValue ExtendedValue::scaled(const Rational& positive_factor) const {
  if (sgn(positive_factor) <= 0)
    throw std::invalid_argument("scaled() requires a positive factor");
  if (kind_ != Kind::Finite) return *this;
  return finite(value_ * positive_factor);
}

std::string ExtendedValue::str() const {
  switch (kind_) {
    case Kind::PlusInf: return "+inf";
    case Kind::MinusInf: return "-inf";
    default: return format_rational(value_);
  }
}

ExtendedValue ExtendedValue::parse(const std::string& text) {
  if (text == "+inf") return plus_inf();
  if (text == "-inf") return minus_inf();
  return finite(parse_rational(text));
}

bool ExtendedValue::operator==(const ExtendedValue& o) const {
  if (kind_ != o.kind_) return false;
  return kind_ != Kind::Finite || value_ == o.value_;
}

std::strong_ordering ExtendedValue::operator<=>(const ExtendedValue& o) const {
  auto rank = [](Kind k) { return k == Kind::MinusInf ? 0 : k == Kind::Finite ? 1 : 2; };
  if (rank(kind_) != rank(o.kind_))
    return rank(kind_) <=> rank(o.kind_);
  if (kind_ != Kind::Finite) return std::strong_ordering::equal;
  int c = cmp(value_, o.value_);
  return c < 0   ? std::strong_ordering::less
         : c > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
}

}  // namespace ktotal
