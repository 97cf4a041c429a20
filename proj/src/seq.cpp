#include "ktotal/seq.hpp"

#include <stdexcept>

namespace ktotal {

Int binom(long a, long b) {
  if (b < 0) return 0;
  if (b == 0) return 1;
  if (a < 0)
    throw std::domain_error("binom: negative upper argument with positive lower");
  if (a < b) return 0;
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a),
               static_cast<unsigned long>(b));
  return r;
}

Rational sum(const Seq& s) {
  Rational acc(0);
  for (const Rational& v : s) acc += v;
  return acc;
}

Rational average(const Seq& s) {
  if (s.empty()) throw std::invalid_argument("average of an empty sequence");
  return sum(s) / Rational(static_cast<long>(s.size()));
}

Seq moment(const Seq& s) {
  Seq out;
  out.reserve(s.size());
  Rational acc(0);
  for (const Rational& v : s) {
    acc += v;
    out.push_back(acc);
  }
  return out;
}

Seq moment_pow(const Seq& s, int k) {
  if (k < 0) throw std::invalid_argument("moment_pow: negative power");
  Seq out = s;
  for (int i = 0; i < k; ++i) out = moment(out);
  return out;
}

Seq moment_pow_binomial(const Seq& s, int k) {
  if (k < 0) throw std::invalid_argument("moment_pow_binomial: negative power");
  if (k == 0) return s;
  const long n = static_cast<long>(s.size());
  Seq out(s.size(), Rational(0));
  for (long i = 1; i <= n; ++i) {
    Rational acc(0);
    for (long j = 1; j <= i; ++j)
      acc += Rational(binom(k - 1 + i - j, k - 1)) * s[j - 1];
    out[i - 1] = acc;
  }
  return out;
}

Seq moment_ones(int n, int k) {
  if (n < 0 || k < 0) throw std::invalid_argument("moment_ones: negative argument");
  Seq out;
  out.reserve(n);
  for (long j = 1; j <= n; ++j) out.push_back(Rational(binom(k - 1 + j, k)));
  return out;
}

Rational sum_moment(const Seq& s, int k) {
  if (k < 0) throw std::invalid_argument("sum_moment: negative power");
  const long n = static_cast<long>(s.size());
  Rational acc(0);
  for (long j = 1; j <= n; ++j) acc += Rational(binom(k + n - j, k)) * s[j - 1];
  return acc;
}

Seq moment_concat(const Seq& x, const Seq& y, int k) {
  if (k < 0) throw std::invalid_argument("moment_concat: negative power");
  Seq head = moment_pow(x, k);
  Seq tail = moment_pow(y, k);
  const int ny = static_cast<int>(y.size());
  for (int l = 1; l <= k; ++l) {
    Rational coeff = sum_moment(x, k - l);
    Seq ramp = moment_ones(ny, l - 1);
    for (int i = 0; i < ny; ++i) tail[i] += coeff * ramp[i];
  }
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

Rational sum_moment_delta(const Seq& x, const Seq& y, int k) {
  return sum_moment(concat(x, y), k) - sum_moment(x, k);
}

Seq concat(const Seq& x, const Seq& y) {
  Seq out = x;
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

Seq negate(const Seq& s) {
  Seq out;
  out.reserve(s.size());
  for (const Rational& v : s) out.push_back(-v);
  return out;
}

}  // namespace ktotal
