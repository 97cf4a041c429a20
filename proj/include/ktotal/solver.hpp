#pragma once

#include <vector>

#include "ktotal/game.hpp"
#include "ktotal/rational.hpp"

namespace ktotal {

enum class Method { Reduction, Enumeration };

inline const char* method_name(Method m) {
  return m == Method::Reduction ? "reduction" : "enumerate";
}

// Uniformly optimal pure stationary pair and the per-start-vertex values.
struct Solution {
  StrategyPair pair;
  std::vector<ExtendedValue> values;
  int k;
  Method method;
};

struct DiscountedSolution {
  StrategyPair pair;
  std::vector<Rational> values;
};

struct SaddleReport {
  struct Violation {
    int start_vertex;
    Owner side;                // deviating side
    Strategy deviation;
    ExtendedValue achieved;    // payoff under the deviation
    ExtendedValue expected;    // payoff under the checked pair
  };
  bool ok;
  std::vector<Violation> violations;
};

// Raised when an enumeration would exceed the configured budget.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr long kDefaultBudget = 1'000'000;

// Lower bound on the smallest positive |sum c_i r_i| over bounded integer
// coefficient vectors: for integer rewards this is 1.
Rational separation_lower_bound(const Game& g, int k);

// Discount factor close enough to 1 that the discounted order refines the
// k-total order on all plays of g: beta = 1 - eps/(4 n^{k+3} R + 1), with
// the degenerate all-zero-rewards case pinned to 1/2.
Rational discount_threshold(const Game& g, int k);

// Exact discounted value of the play from each vertex under a fixed pair.
std::vector<Rational> eval_discounted(const Game& g, const StrategyPair& pair,
                                      const Rational& beta);

// Exact discounted solve by strategy improvement (all improving switches per
// side, alternating sides: the inner side is improved to quiescence, then the
// outer side gets one sweep). Returned values satisfy the Bellman optimality
// conditions exactly.
DiscountedSolution solve_discounted(const Game& g, const Rational& beta);

// k-total solve through the discounted reduction: solve at the threshold
// discount, then read off exact k-total payoffs of the resulting plays.
Solution solve_k_total(const Game& g, int k);

// Brute-force minimax over all pure stationary pairs; verifies that max-min
// and min-max coincide at every start vertex and returns a uniformly optimal
// pair. Throws BudgetExceeded when the pair count exceeds the budget.
Solution enumerate_solve(const Game& g, int k, long budget = kDefaultBudget);

// Best reply of the opponent to a fixed one-side strategy, optimizing the
// payoff at the game's start vertex (first vertex when none is declared).
Strategy best_response(const Game& g, int k, const Strategy& fixed,
                       long budget = kDefaultBudget);

// Checks the saddle-point inequalities for every start vertex against every
// unilateral pure stationary deviation of each side.
SaddleReport check_saddle(const Game& g, int k, const StrategyPair& pair,
                          long budget = kDefaultBudget);

// Subdivide every arc (u -r-> v) into u -r-> w -(-r)-> v with a fresh vertex
// w owned by u's owner. Raises the hierarchy level: values at original
// vertices at level k+1 equal 2^{k-1} times the original level-k values.
Game split_game(const Game& g);

// Strategy correspondence for games produced by split_game: original arc e
// maps to split arc 2e, and subdivision vertices are forced.
StrategyPair lift_pair(const Game& original, const StrategyPair& pair);
StrategyPair project_pair(const Game& original, const StrategyPair& split_pair);

// 2^{k-1} as an exact rational (1/2 at k = 0).
Rational split_scale_factor(int k);

}  // namespace ktotal
