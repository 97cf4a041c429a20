#include "ktotal/lasso.hpp"

#include <stdexcept>

namespace ktotal {

Lasso::Lasso(Seq p, Seq c) : prefix(std::move(p)), cycle(std::move(c)) {
  if (cycle.empty()) throw std::invalid_argument("lasso with empty cycle");
}

Rational Lasso::magnitude() const {
  Rational m(0);
  for (const Rational& v : prefix)
    if (abs(v) > m) m = abs(v);
  for (const Rational& v : cycle)
    if (abs(v) > m) m = abs(v);
  return m;
}

Rational element_at(const Lasso& l, long i) {
  if (i < 1) throw std::out_of_range("element_at: index must be >= 1");
  if (i <= l.p()) return l.prefix[i - 1];
  long r = (i - l.p()) % l.q();  // position within the cycle, 1-based; 0 -> q
  if (r == 0) r = l.q();
  return l.cycle[r - 1];
}

Rational moment_at(const Lasso& l, long i) {
  if (i < 1) throw std::out_of_range("moment_at: index must be >= 1");
  Rational acc(0);
  if (i <= l.p()) {
    for (long j = 1; j <= i; ++j) acc += l.prefix[j - 1];
    return acc;
  }
  acc = sum(l.prefix);
  long rest = i - l.p();
  long full = (rest - 1) / l.q();  // completed cycle copies before position i
  long r = rest - full * l.q();    // 1 <= r <= q
  acc += Rational(full) * sum(l.cycle);
  for (long j = 1; j <= r; ++j) acc += l.cycle[j - 1];
  return acc;
}

Rational delta(const Lasso& l, int level) {
  return sum_moment_delta(l.prefix, l.cycle, level);
}

Lasso moment_lasso(const Lasso& l) {
  if (sum(l.cycle) != 0)
    throw std::domain_error("moment_lasso: cycle does not sum to zero");
  Rational base = sum(l.prefix);
  Seq cyc = moment(l.cycle);
  for (Rational& v : cyc) v += base;
  return Lasso(moment(l.prefix), std::move(cyc));
}

LassoClass classify(const Lasso& l, int k) {
  if (k < 0) throw std::invalid_argument("classify: negative level");
  for (int m = 0; m < k; ++m) {
    Rational d = delta(l, m);
    int s = sgn(d);
    if (s != 0) return LassoClass::bad(m, s);
  }
  return LassoClass::good_at();
}

ExtendedValue k_total(const Lasso& l, int k) {
  LassoClass c = classify(l, k);
  if (!c.good)
    return c.sign > 0 ? ExtendedValue::plus_inf() : ExtendedValue::minus_inf();
  return ExtendedValue::finite(delta(l, k) / Rational(l.q()));
}

Rational k_total_closed_form(const Lasso& l, int k) {
  if (!classify(l, k).good)
    throw std::domain_error("k_total_closed_form: lasso not good at this level");
  const long p = l.p(), q = l.q();
  Rational acc(0);
  for (long j = 1; j <= p; ++j)
    acc += l.prefix[j - 1] *
           Rational(binom(q + p - j + k, k) - binom(p - j + k, k));
  for (long i = 1; i <= q; ++i)
    acc += Rational(binom(k + q - i, k)) * l.cycle[i - 1];
  return acc / Rational(q);
}

Rational discounted_value(const Lasso& l, const Rational& beta) {
  if (sgn(beta) <= 0 || beta >= 1)
    throw std::invalid_argument("discounted_value: beta must be in (0,1)");
  Rational pow(1);  // beta^{j-1}, advanced as we walk the entries
  Rational head(0);
  for (const Rational& v : l.prefix) {
    head += pow * v;
    pow *= beta;
  }
  Rational cyc(0);
  Rational cpow(1);
  for (const Rational& v : l.cycle) {
    cyc += cpow * v;
    cpow *= beta;
  }
  // pow == beta^p, cpow == beta^q here.
  return (1 - beta) * (head + pow / (1 - cpow) * cyc);
}

Rational discounted_k_total(const Lasso& l, int k, const Rational& beta) {
  if (k < 0) throw std::invalid_argument("discounted_k_total: negative level");
  Rational denom(1);
  for (int i = 0; i < k; ++i) denom *= (1 - beta);
  return discounted_value(l, beta) / denom;
}

namespace {
Seq split_seq(const Seq& s) {
  Seq out;
  out.reserve(2 * s.size());
  for (const Rational& v : s) {
    out.push_back(v);
    out.push_back(-v);
  }
  return out;
}
}  // namespace

Lasso split(const Lasso& l) {
  return Lasso(split_seq(l.prefix), split_seq(l.cycle));
}

Seq truncate(const Lasso& l, long t) {
  if (t < 0) throw std::invalid_argument("truncate: negative length");
  Seq out;
  out.reserve(t);
  for (long i = 1; i <= t; ++i) out.push_back(element_at(l, i));
  return out;
}

Rational truncated_average(const Lasso& l, int k, long t) {
  if (t < 1) throw std::invalid_argument("truncated_average: horizon must be >= 1");
  return sum_moment(truncate(l, t), k) / Rational(t);
}

}  // namespace ktotal
