#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <stdexcept>

#include "doctest.h"
#include "ktotal/seq.hpp"
#include "testutil.hpp"

using namespace ktotal;
using namespace ktotal::tu;

TEST_CASE("binomial coefficient conventions") {
  CHECK(binom(5, 3) == 10);
  CHECK(binom(2, 5) == 0);
  CHECK(binom(7, 0) == 1);
  CHECK(binom(0, 0) == 1);
  CHECK(binom(-4, 0) == 1);
  CHECK(binom(9, -2) == 0);
  CHECK(binom(-3, -1) == 0);
  CHECK(binom(12, 12) == 1);
  CHECK(binom(12, 6) == 924);
  CHECK_THROWS_AS(binom(-1, 1), std::domain_error);
  CHECK_THROWS_AS(binom(-7, 3), std::domain_error);
}

TEST_CASE("sum and average") {
  CHECK(sum(seq_of({1, -1, -1, 1})) == 0);
  CHECK(sum(Seq{}) == 0);
  CHECK(sum(seq_of({1, 0, -1, 0})) == 0);
  CHECK(sum(seq_of({2, 3, 4})) == 9);

  CHECK(average(seq_of({1, 0, -1, 0})) == 0);
  CHECK(average(Seq{rq(7, 3)}) == rq(7, 3));
  CHECK(average(seq_of({1, 1, 0, 0})) == rq(1, 2));
  CHECK_THROWS_AS(average(Seq{}), std::invalid_argument);
}

TEST_CASE("prefix-sum operator") {
  CHECK(moment(seq_of({-1, 1, 1, -1})) == seq_of({-1, 0, 1, 0}));
  CHECK(moment(Seq{}) == Seq{});
  CHECK(moment(seq_of({1, -1, -1, 1})) == seq_of({1, 0, -1, 0}));
}

TEST_CASE("iterated prefix sums") {
  CHECK(moment_pow(seq_of({1, -1, -1, 1}), 2) == seq_of({1, 1, 0, 0}));
  Seq s = seq_of({3, -2, 5});
  CHECK(moment_pow(s, 0) == s);
  CHECK(moment_pow(seq_of({1, 1, 1}), 2) == seq_of({1, 3, 6}));
}

TEST_CASE("iterated prefix sums match the binomial closed form") {
  Rng rng(20240701);
  for (int iter = 0; iter < 200; ++iter) {
    long len = rand_int(rng, 0, 12);
    int k = static_cast<int>(rand_int(rng, 0, 6));
    Seq s = random_seq(rng, len, -9, 9);
    CHECK(moment_pow(s, k) == moment_pow_binomial(s, k));
  }
}

TEST_CASE("moments of the all-ones sequence") {
  CHECK(moment_ones(4, 2) == seq_of({1, 3, 6, 10}));
  CHECK(sum(moment_ones(4, 2)) == 20);
  CHECK(moment_ones(5, 0) == seq_of({1, 1, 1, 1, 1}));
  CHECK(moment_ones(3, 1) == seq_of({1, 2, 3}));

  for (int n = 1; n <= 12; ++n) {
    for (int k = 0; k <= 6; ++k) {
      Seq e(n, Rational(1));
      CHECK(moment_ones(n, k) == moment_pow(e, k));
      CHECK(sum(moment_ones(n, k)) == Rational(binom(n + k, k + 1)));
    }
  }
}

TEST_CASE("closed-form sum of an iterated moment") {
  CHECK(sum_moment(seq_of({1, 0, -1, 0}), 1) == 2);
  CHECK(sum_moment(Seq{rq(9, 4)}, 0) == rq(9, 4));
  CHECK(sum_moment(seq_of({1, 1, 1, 1}), 2) == 20);

  Rng rng(20240702);
  for (int iter = 0; iter < 200; ++iter) {
    Seq s = random_seq(rng, rand_int(rng, 0, 12), -9, 9);
    int k = static_cast<int>(rand_int(rng, 0, 6));
    CHECK(sum_moment(s, k) == sum(moment_pow(s, k)));
  }
}

TEST_CASE("linearity of sum and prefix sums") {
  Rng rng(20240703);
  for (int iter = 0; iter < 100; ++iter) {
    long len = rand_int(rng, 0, 10);
    Seq a = random_seq(rng, len, -9, 9);
    Seq b = random_seq(rng, len, -9, 9);
    Rational lam = rq(rand_int(rng, -9, 9), rand_int(rng, 1, 9));

    Seq ab(len), la(len);
    for (long i = 0; i < len; ++i) {
      ab[i] = a[i] + b[i];
      la[i] = lam * a[i];
    }
    CHECK(sum(ab) == sum(a) + sum(b));
    CHECK(sum(la) == lam * sum(a));

    Seq ma = moment(a), mb = moment(b), mab = moment(ab), mla = moment(la);
    for (long i = 0; i < len; ++i) {
      CHECK(mab[i] == ma[i] + mb[i]);
      CHECK(mla[i] == lam * ma[i]);
    }
  }
}

TEST_CASE("hockey-stick binomial identity") {
  for (long a = 0; a <= 12; ++a) {
    for (long k = 0; k <= 12; ++k) {
      Int lhs(0);
      for (long j = 0; j <= k; ++j) lhs += binom(a + j, a);
      CHECK(lhs == binom(a + k + 1, k));
    }
  }
}

TEST_CASE("alternating column-sum binomial identity") {
  // sum_u (-1)^u C(N,u) C(X-u,R) = C(X-N, X-R). The lower-left arguments stay
  // in the classical domain only for N <= X; R is unrestricted.
  for (long x = 0; x <= 12; ++x) {
    for (long n = 0; n <= x; ++n) {
      for (long r = 0; r <= 12; ++r) {
        Int lhs(0);
        for (long u = 0; u <= n; ++u) {
          Int term = binom(n, u) * binom(x - u, r);
          lhs += (u % 2 == 0) ? term : -term;
        }
        CHECK(lhs == binom(x - n, x - r));
      }
    }
  }
}

TEST_CASE("Vandermonde-style convolution identity") {
  for (long x = 0; x <= 12; ++x)
    for (long y = 0; y <= 12; ++y)
      for (long n = 0; n <= 12; ++n) {
        Int lhs(0);
        for (long u = 0; u <= n; ++u)
          lhs += binom(x + u, u) * binom(y + n - u, n - u);
        CHECK(lhs == binom(x + y + n + 1, n));
      }
}

TEST_CASE("ones-block sums and their convolution") {
  // S(M^{l-1}(ones of length m)) = C(m+l-1, l) for l >= 1.
  for (long m = 0; m <= 12; ++m)
    for (long l = 1; l <= 12; ++l) {
      Seq e(m, Rational(1));
      CHECK(sum(moment_pow(e, static_cast<int>(l) - 1)) ==
            Rational(binom(m + l - 1, l)));
    }

  // sum_m C(ny+l-1-m, l-m) C(nz+m-1, m) = C(ny+nz+l-1, l).
  for (long ny = 0; ny <= 12; ++ny)
    for (long nz = 0; nz <= 12; ++nz)
      for (long l = 0; l <= 12; ++l) {
        Int lhs(0);
        for (long m = 0; m <= l; ++m)
          lhs += binom(ny + l - 1 - m, l - m) * binom(nz + m - 1, m);
        CHECK(lhs == binom(ny + nz + l - 1, l));
      }
}

TEST_CASE("alternating power-of-two binomial identity") {
  // sum_j (-1)^j 2^(k-2j) C(k-j,j) C(X+k-j,k-j) = C(2X+k+1, k).
  for (long x = 0; x <= 12; ++x)
    for (long k = 0; k <= 12; ++k) {
      Rational lhs(0);
      for (long j = 0; 2 * j <= k; ++j) {
        Rational pw = rq(1, 1);
        for (long i = 0; i < k - 2 * j; ++i) pw *= 2;
        Rational term = pw * Rational(binom(k - j, j) * binom(x + k - j, k - j));
        lhs += (j % 2 == 0) ? term : -term;
      }
      CHECK(lhs == Rational(binom(2 * x + k + 1, k)));
    }
  // spot value: X=1, k=2 gives 10 on both sides
  CHECK(binom(5, 2) == 10);
}

TEST_CASE("blockwise concatenation moments") {
  CHECK(moment_concat(seq_of({1}), seq_of({2, 3}), 1) == seq_of({1, 3, 6}));
  Seq s = seq_of({4, -2, 0, 7});
  CHECK(moment_concat(Seq{}, s, 3) == moment_pow(s, 3));
  CHECK(moment_concat(seq_of({1, 0}), seq_of({1, 1}), 2) == seq_of({1, 2, 4, 7}));

  Rng rng(20240704);
  for (int iter = 0; iter < 200; ++iter) {
    Seq x = random_seq(rng, rand_int(rng, 0, 6), -9, 9);
    Seq y = random_seq(rng, rand_int(rng, 0, 6), -9, 9);
    int k = static_cast<int>(rand_int(rng, 0, 4));
    CHECK(moment_concat(x, y, k) == moment_pow(concat(x, y), k));
  }
}

TEST_CASE("appending contribution to the moment sum") {
  CHECK(sum_moment_delta(Seq{}, seq_of({1, 0, -1, 0}), 1) == 2);
  CHECK(sum_moment_delta(seq_of({5, -3}), Seq{}, 3) == 0);
  CHECK(sum_moment_delta(seq_of({1}), seq_of({-1}), 1) == 0);
}

TEST_CASE("concatenation sum expansions") {
  Rng rng(20240705);
  for (int iter = 0; iter < 200; ++iter) {
    Seq x = random_seq(rng, rand_int(rng, 0, 6), -9, 9);
    Seq y = random_seq(rng, rand_int(rng, 0, 6), -9, 9);
    Seq z = random_seq(rng, rand_int(rng, 0, 6), -9, 9);
    int k = static_cast<int>(rand_int(rng, 0, 4));

    CHECK(sum_moment(concat(x, y), k) == concat2_rhs(x, y, k));
    CHECK(sum_moment(concat(concat(x, y), z), k) == concat3_rhs(x, y, z, k));
    CHECK(sum_moment(concat(concat(x, y), z), k) == middle_deletion_rhs(x, y, z, k));
    CHECK(sum_moment_delta(x, y, k) ==
          concat2_rhs(x, y, k) - sum_moment(x, k));
  }
}

TEST_CASE("concat and negate") {
  CHECK(concat(seq_of({1, 2}), seq_of({3})) == seq_of({1, 2, 3}));
  CHECK(concat(Seq{}, Seq{}) == Seq{});
  CHECK(negate(seq_of({1, -2, 0})) == seq_of({-1, 2, 0}));
}
