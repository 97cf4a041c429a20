#pragma once

#include <vector>

#include "ktotal/rational.hpp"
#include "ktotal/seq.hpp"

namespace ktotal {

// Eventually periodic reward stream: prefix x (possibly empty) followed by
// the cycle y repeated forever. The cycle must be nonempty.
struct Lasso {
  Seq prefix;
  Seq cycle;

  Lasso(Seq p, Seq c);

  long p() const { return static_cast<long>(prefix.size()); }
  long q() const { return static_cast<long>(cycle.size()); }

  // Max absolute entry over prefix and cycle.
  Rational magnitude() const;
};

// Outcome of testing the cycle deltas at levels 0..k-1.
// good: all tested deltas vanish. Otherwise level is the first nonzero
// delta's index m (0 <= m < k) and sign is its sign (+1 or -1).
struct LassoClass {
  bool good;
  int level;
  int sign;

  static LassoClass good_at() { return {true, -1, 0}; }
  static LassoClass bad(int m, int s) { return {false, m, s}; }
};

// i-th entry (1-based) of the infinite stream.
Rational element_at(const Lasso& l, long i);

// i-th entry (1-based) of the moment (prefix-sum) sequence of the stream,
// in closed form: within the prefix it is a partial sum of x; past it,
// S(x) + full-cycle repetitions + a partial sum of y.
Rational moment_at(const Lasso& l, long i);

// Level-l cycle delta: S(M^l(x,y)) - S(M^l(x)).
Rational delta(const Lasso& l, int level);

// Moment of a lasso whose cycle sums to zero is again a lasso with the same
// shape: prefix M(x), cycle S(x) + M(y) entrywise. Rejects S(cycle) != 0.
Lasso moment_lasso(const Lasso& l);

LassoClass classify(const Lasso& l, int k);

// k-total reward value of the stream: delta_k / q when all lower deltas
// vanish, otherwise +inf/-inf by the sign of the first nonzero delta.
ExtendedValue k_total(const Lasso& l, int k);

// Same value for good lassos via the binomial closed form
//   (1/q) [ sum_j x_j (C(q+p-j+k,k) - C(p-j+k,k)) + sum_i C(k+q-i,k) y_i ].
// Rejects lassos that are not good at level k.
Rational k_total_closed_form(const Lasso& l, int k);

// Discounted average of the stream, exact:
// (1-b) [ sum_{j<=p} b^{j-1} x_j + b^p/(1-b^q) sum_{i<=q} b^{i-1} y_i ].
Rational discounted_value(const Lasso& l, const Rational& beta);

// Discounted k-total value: discounted_value / (1-beta)^k.
Rational discounted_k_total(const Lasso& l, int k, const Rational& beta);

// Interleave each entry with its negation, in both prefix and cycle:
// (a1, a2, ...) -> (a1, -a1, a2, -a2, ...). Raises the hierarchy level by
// one: the (k+1)-total value of the split is 2^{k-1} times the k-total value.
Lasso split(const Lasso& l);

// First t entries of the stream.
Seq truncate(const Lasso& l, long t);

// (1/t) * S(M^k(first t entries)): the finite-horizon estimate of k_total.
Rational truncated_average(const Lasso& l, int k, long t);

}  // namespace ktotal
