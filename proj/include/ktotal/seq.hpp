#pragma once

#include <vector>

#include "ktotal/rational.hpp"

namespace ktotal {

// Finite sequence of exact rationals, 1-based in the math, 0-based in code.
using Seq = std::vector<Rational>;

// Binomial coefficient with the boundary conventions used throughout:
// b < 0 -> 0;  b == 0 -> 1 (any a, including negative);  0 <= a < b -> 0.
// A negative a with b >= 1 is outside every formula's domain -> rejected.
Int binom(long a, long b);

Rational sum(const Seq& s);

// Average of the entries; empty input rejected.
Rational average(const Seq& s);

// Moment operator: prefix sums (b_i = z_1 + ... + z_i).
Seq moment(const Seq& s);

// k-fold moment, by iterating the prefix-sum pass.
Seq moment_pow(const Seq& s, int k);

// k-fold moment in closed form: b_i = sum_j C(k-1+i-j, k-1) z_j for k >= 1.
// Equals moment_pow; kept as an independent arithmetic route.
Seq moment_pow_binomial(const Seq& s, int k);

// M^k of the all-ones sequence of length n: (C(k-1+j, k) | j = 1..n).
Seq moment_ones(int n, int k);

// S(M^k(s)) in closed form: sum_j C(k+n-j, k) z_j.
Rational sum_moment(const Seq& s, int k);

// M^k of the concatenation (x, y), computed blockwise:
// ( M^k(x),  M^k(y) + sum_{l=1..k} S(M^{k-l}(x)) * M^{l-1}(ones(|y|)) ).
Seq moment_concat(const Seq& x, const Seq& y, int k);

// S(M^k(x,y)) - S(M^k(x)): the level-k contribution of appending y to x.
Rational sum_moment_delta(const Seq& x, const Seq& y, int k);

Seq concat(const Seq& x, const Seq& y);
Seq negate(const Seq& s);

}  // namespace ktotal
