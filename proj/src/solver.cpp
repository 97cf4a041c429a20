#include "ktotal/solver.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace ktotal {

namespace {

// One chosen out-arc per vertex, both sides flattened together.
using Profile = std::vector<int>;

Profile flatten(const Game& g, const StrategyPair& pair) {
  Profile p(g.n());
  for (int v = 0; v < g.n(); ++v) p[v] = pair.arc_at(g, v);
  return p;
}

StrategyPair unflatten(const Game& g, const Profile& p) {
  Strategy mn{Owner::Min, std::vector<int>(g.n(), -1)};
  Strategy mx{Owner::Max, std::vector<int>(g.n(), -1)};
  for (int v = 0; v < g.n(); ++v)
    (g.vertices[v].owner == Owner::Min ? mn : mx).arc_for[v] = p[v];
  return {std::move(mn), std::move(mx)};
}

Lasso play_profile(const Game& g, int v0, const Profile& profile) {
  std::vector<int> first_visit(g.n(), -1);
  Seq rewards;
  int cur = v0;
  int t = 0;
  first_visit[cur] = 0;
  for (;;) {
    int e = profile[cur];
    rewards.push_back(Rational(g.arcs[e].reward));
    cur = g.arcs[e].to;
    ++t;
    if (first_visit[cur] >= 0) {
      int t0 = first_visit[cur];
      return Lasso(Seq(rewards.begin(), rewards.begin() + t0),
                   Seq(rewards.begin() + t0, rewards.end()));
    }
    first_visit[cur] = t;
  }
}

ExtendedValue payoff_profile(const Game& g, int v0, const Profile& p, int k) {
  return k_total(play_profile(g, v0, p), k);
}

// Exact discounted values of the functional graph picked out by a profile:
// cycles get the closed-form geometric value, the rest back-propagates.
std::vector<Rational> eval_profile(const Game& g, const Profile& profile,
                                   const Rational& beta) {
  const Rational one_minus = 1 - beta;
  const int n = g.n();
  std::vector<Rational> val(n, Rational(0));
  std::vector<char> state(n, 0);  // 0 fresh, 1 on stack, 2 done
  std::vector<int> pos_on_stack(n, -1);
  std::vector<int> stack;

  for (int root = 0; root < n; ++root) {
    if (state[root] == 2) continue;
    stack.clear();
    int cur = root;
    while (state[cur] == 0) {
      state[cur] = 1;
      pos_on_stack[cur] = static_cast<int>(stack.size());
      stack.push_back(cur);
      cur = g.arcs[profile[cur]].to;
    }
    int unwind_from = static_cast<int>(stack.size()) - 1;
    if (state[cur] == 1) {
      // Closed a cycle inside the current stack: stack[i0..top].
      int i0 = pos_on_stack[cur];
      Rational num(0);
      Rational pw(1);
      for (int j = i0; j < static_cast<int>(stack.size()); ++j) {
        num += pw * Rational(g.arcs[profile[stack[j]]].reward);
        pw *= beta;
      }
      val[cur] = one_minus * num / (1 - pw);  // pw == beta^cycle_len
      state[cur] = 2;
      for (int j = static_cast<int>(stack.size()) - 1; j > i0; --j) {
        int v = stack[j];
        int next = g.arcs[profile[v]].to;
        val[v] = one_minus * Rational(g.arcs[profile[v]].reward) + beta * val[next];
        state[v] = 2;
      }
      unwind_from = i0 - 1;
    }
    for (int j = unwind_from; j >= 0; --j) {
      int v = stack[j];
      int next = g.arcs[profile[v]].to;
      val[v] = one_minus * Rational(g.arcs[profile[v]].reward) + beta * val[next];
      state[v] = 2;
    }
    for (int v : stack) pos_on_stack[v] = -1;
  }

  // Evaluation self-check: the one-step consistency must hold exactly.
  for (int v = 0; v < n; ++v) {
    const Game::Arc& a = g.arcs[profile[v]];
    if (val[v] != one_minus * Rational(a.reward) + beta * val[a.to])
      throw std::logic_error("discounted evaluation fixpoint violated");
  }
  return val;
}

// One all-improving-switches sweep for `side`. Only strictly improving arcs
// switch; ties keep the current arc; among improving arcs the best q-value
// wins with the earliest out-arc breaking ties. Returns switch count.
int improve_side(const Game& g, Profile& profile, const std::vector<Rational>& val,
                 const Rational& beta, Owner side) {
  const Rational one_minus = 1 - beta;
  int switched = 0;
  for (int v = 0; v < g.n(); ++v) {
    if (g.vertices[v].owner != side) continue;
    Rational best = val[v];
    int best_arc = profile[v];
    for (int e : g.out(v)) {
      Rational q = one_minus * Rational(g.arcs[e].reward) + beta * val[g.arcs[e].to];
      bool better = side == Owner::Max ? q > best : q < best;
      if (better) {
        best = q;
        best_arc = e;
      }
    }
    if (best_arc != profile[v]) {
      profile[v] = best_arc;
      ++switched;
    }
  }
  return switched;
}

// direction +1: every entry must not decrease and some entry must increase;
// direction -1: mirrored. Guards the strategy-improvement progress argument.
void assert_monotone(const std::vector<Rational>& before,
                     const std::vector<Rational>& after, int direction) {
  bool strict = false;
  for (std::size_t i = 0; i < before.size(); ++i) {
    int c = cmp(after[i], before[i]);
    if (c * direction < 0)
      throw std::logic_error("strategy improvement regressed a value");
    if (c != 0) strict = true;
  }
  if (!strict) throw std::logic_error("strategy improvement made no progress");
}

// Lexicographic enumeration of one side's strategies (vertex order, then the
// vertex's out-arc order; the last owned vertex cycles fastest).
class SideStrategies {
 public:
  SideStrategies(const Game& g, Owner side) : g_(g), side_(side) {
    for (int v = 0; v < g.n(); ++v)
      if (g.vertices[v].owner == side) owned_.push_back(v);
  }

  Int count() const {
    Int c(1);
    for (int v : owned_) c *= static_cast<long>(g_.out(v).size());
    return c;
  }

  // Fills `arc_for` (full-size table, -1 on unowned vertices) with the first
  // strategy; subsequent next() calls advance it. Returns false when done.
  bool first(std::vector<int>& arc_for) {
    counter_.assign(owned_.size(), 0);
    arc_for.assign(g_.n(), -1);
    for (int v : owned_) arc_for[v] = g_.out(v).front();
    return true;
  }

  bool next(std::vector<int>& arc_for) {
    for (int i = static_cast<int>(owned_.size()) - 1; i >= 0; --i) {
      int v = owned_[i];
      if (++counter_[i] < static_cast<int>(g_.out(v).size())) {
        arc_for[v] = g_.out(v)[counter_[i]];
        return true;
      }
      counter_[i] = 0;
      arc_for[v] = g_.out(v).front();
    }
    return false;
  }

  Strategy as_strategy(const std::vector<int>& arc_for) const {
    return Strategy{side_, arc_for};
  }

 private:
  const Game& g_;
  Owner side_;
  std::vector<int> owned_;
  std::vector<int> counter_;
};

Profile combine(const std::vector<int>& min_table, const std::vector<int>& max_table,
                const Game& g) {
  Profile p(g.n());
  for (int v = 0; v < g.n(); ++v)
    p[v] = g.vertices[v].owner == Owner::Min ? min_table[v] : max_table[v];
  return p;
}

}  // namespace

Rational separation_lower_bound(const Game&, int) { return Rational(1); }

Rational discount_threshold(const Game& g, int k) {
  if (k < 0) throw std::invalid_argument("negative level");
  Int r = g.max_abs_reward();
  if (r == 0) return make_rational(1, 2);
  Int pw;
  mpz_pow_ui(pw.get_mpz_t(), Int(g.n()).get_mpz_t(), static_cast<unsigned long>(k) + 3);
  Int denom = 4 * pw * r + 1;
  return 1 - separation_lower_bound(g, k) / Rational(denom);
}

std::vector<Rational> eval_discounted(const Game& g, const StrategyPair& pair,
                                      const Rational& beta) {
  if (sgn(beta) <= 0 || beta >= 1)
    throw std::invalid_argument("discount factor must be in (0,1)");
  validate_pair(g, pair);
  return eval_profile(g, flatten(g, pair), beta);
}

DiscountedSolution solve_discounted(const Game& g, const Rational& beta) {
  if (sgn(beta) <= 0 || beta >= 1)
    throw std::invalid_argument("discount factor must be in (0,1)");
  Profile profile = flatten(g, lowest_arc_pair(g));
  std::vector<Rational> val = eval_profile(g, profile, beta);

  long guard = 0;
  const long kGuardLimit = 1'000'000;
  auto spend = [&]() {
    if (++guard > kGuardLimit)
      throw std::logic_error("strategy improvement failed to terminate");
  };

  for (;;) {
    // Improve MIN to quiescence, then give MAX one sweep.
    while (improve_side(g, profile, val, beta, Owner::Min) > 0) {
      spend();
      std::vector<Rational> next = eval_profile(g, profile, beta);
      assert_monotone(val, next, -1);
      val = std::move(next);
    }
    if (improve_side(g, profile, val, beta, Owner::Max) == 0) break;
    spend();
    std::vector<Rational> next = eval_profile(g, profile, beta);
    assert_monotone(val, next, +1);
    val = std::move(next);
  }

  // Exact Bellman optimality at every vertex.
  const Rational one_minus = 1 - beta;
  for (int v = 0; v < g.n(); ++v) {
    bool maxing = g.vertices[v].owner == Owner::Max;
    Rational opt = one_minus * Rational(g.arcs[g.out(v).front()].reward) +
                   beta * val[g.arcs[g.out(v).front()].to];
    for (int e : g.out(v)) {
      Rational q = one_minus * Rational(g.arcs[e].reward) + beta * val[g.arcs[e].to];
      if (maxing ? q > opt : q < opt) opt = q;
    }
    if (val[v] != opt)
      throw std::logic_error("discounted solve left a Bellman violation");
  }

  return {unflatten(g, profile), std::move(val)};
}

Solution solve_k_total(const Game& g, int k) {
  if (k < 0) throw std::invalid_argument("negative level");
  if (g.max_abs_reward() == 0) {
    // Every play is all-zero, every pair optimal, every value zero.
    std::vector<ExtendedValue> values(g.n(), ExtendedValue::finite(Rational(0)));
    return {lowest_arc_pair(g), std::move(values), k, Method::Reduction};
  }
  DiscountedSolution ds = solve_discounted(g, discount_threshold(g, k));
  std::vector<ExtendedValue> values;
  values.reserve(g.n());
  for (int v = 0; v < g.n(); ++v) values.push_back(payoff(g, v, ds.pair, k));
  return {std::move(ds.pair), std::move(values), k, Method::Reduction};
}

Solution enumerate_solve(const Game& g, int k, long budget) {
  if (k < 0) throw std::invalid_argument("negative level");
  SideStrategies mins(g, Owner::Min), maxs(g, Owner::Max);
  Int pairs = mins.count() * maxs.count();
  if (pairs > budget)
    throw BudgetExceeded("enumeration needs " + pairs.get_str() +
                         " strategy pairs, budget is " + std::to_string(budget));

  const int n = g.n();
  auto values_fixed_max = [&](const std::vector<int>& mx) {
    // min over MIN strategies, per start vertex
    std::vector<ExtendedValue> best;
    std::vector<int> mn;
    for (bool ok = mins.first(mn); ok; ok = mins.next(mn)) {
      Profile p = combine(mn, mx, g);
      for (int v = 0; v < n; ++v) {
        ExtendedValue x = payoff_profile(g, v, p, k);
        if (best.size() < static_cast<std::size_t>(n))
          best.push_back(x);
        else if (x < best[v])
          best[v] = x;
      }
    }
    return best;
  };
  auto values_fixed_min = [&](const std::vector<int>& mn) {
    std::vector<ExtendedValue> best;
    std::vector<int> mx;
    for (bool ok = maxs.first(mx); ok; ok = maxs.next(mx)) {
      Profile p = combine(mn, mx, g);
      for (int v = 0; v < n; ++v) {
        ExtendedValue x = payoff_profile(g, v, p, k);
        if (best.size() < static_cast<std::size_t>(n))
          best.push_back(x);
        else if (x > best[v])
          best[v] = x;
      }
    }
    return best;
  };

  // max over MAX strategies of (min over MIN strategies), pointwise.
  std::vector<ExtendedValue> maximin;
  std::vector<int> mx;
  for (bool ok = maxs.first(mx); ok; ok = maxs.next(mx)) {
    std::vector<ExtendedValue> g_w = values_fixed_max(mx);
    if (maximin.empty())
      maximin = std::move(g_w);
    else
      for (int v = 0; v < n; ++v)
        if (g_w[v] > maximin[v]) maximin[v] = g_w[v];
  }

  // min over MIN strategies of (max over MAX strategies), pointwise.
  std::vector<ExtendedValue> minimax;
  std::vector<int> mn;
  for (bool ok = mins.first(mn); ok; ok = mins.next(mn)) {
    std::vector<ExtendedValue> h_b = values_fixed_min(mn);
    if (minimax.empty())
      minimax = std::move(h_b);
    else
      for (int v = 0; v < n; ++v)
        if (h_b[v] < minimax[v]) minimax[v] = h_b[v];
  }

  for (int v = 0; v < n; ++v)
    if (!(maximin[v] == minimax[v]))
      throw std::logic_error("minimax exchange failed at vertex " + g.vertices[v].id);

  // First strategy of each side that attains the value at every start vertex
  // simultaneously (such a uniformly optimal strategy must exist).
  std::vector<int> best_max, best_min;
  for (bool ok = maxs.first(mx); ok; ok = maxs.next(mx)) {
    if (values_fixed_max(mx) == maximin) {
      best_max = mx;
      break;
    }
  }
  for (bool ok = mins.first(mn); ok; ok = mins.next(mn)) {
    if (values_fixed_min(mn) == minimax) {
      best_min = mn;
      break;
    }
  }
  if (best_max.size() != static_cast<std::size_t>(n) ||
      best_min.size() != static_cast<std::size_t>(n))
    throw std::logic_error("no uniformly optimal strategy found by enumeration");

  Profile p = combine(best_min, best_max, g);
  for (int v = 0; v < n; ++v)
    if (!(payoff_profile(g, v, p, k) == maximin[v]))
      throw std::logic_error("selected pair does not realize the game value");

  return {unflatten(g, p), std::move(maximin), k, Method::Enumeration};
}

Strategy best_response(const Game& g, int k, const Strategy& fixed, long budget) {
  if (k < 0) throw std::invalid_argument("negative level");
  validate_strategy(g, fixed);
  Owner opp = fixed.side == Owner::Min ? Owner::Max : Owner::Min;
  SideStrategies opps(g, opp);
  if (opps.count() > budget)
    throw BudgetExceeded("best response needs " + opps.count().get_str() +
                         " strategies, budget is " + std::to_string(budget));
  int v0 = g.start.value_or(0);

  std::vector<int> table, best_table;
  ExtendedValue best_val;
  bool have = false;
  for (bool ok = opps.first(table); ok; ok = opps.next(table)) {
    Profile p = opp == Owner::Min ? combine(table, fixed.arc_for, g)
                                  : combine(fixed.arc_for, table, g);
    ExtendedValue val = payoff_profile(g, v0, p, k);
    bool better = !have || (opp == Owner::Max ? val > best_val : val < best_val);
    if (better) {
      best_val = val;
      best_table = table;
      have = true;
    }
  }
  return Strategy{opp, best_table};
}

SaddleReport check_saddle(const Game& g, int k, const StrategyPair& pair,
                          long budget) {
  if (k < 0) throw std::invalid_argument("negative level");
  validate_pair(g, pair);
  SideStrategies mins(g, Owner::Min), maxs(g, Owner::Max);
  Int deviations = mins.count() + maxs.count();
  if (deviations > budget)
    throw BudgetExceeded("saddle check needs " + deviations.get_str() +
                         " deviations, budget is " + std::to_string(budget));

  const int n = g.n();
  Profile base = flatten(g, pair);
  std::vector<ExtendedValue> val;
  val.reserve(n);
  for (int v = 0; v < n; ++v) val.push_back(payoff_profile(g, v, base, k));

  SaddleReport report;
  std::vector<int> table;
  for (bool ok = maxs.first(table); ok; ok = maxs.next(table)) {
    Profile p = combine(pair.min_strategy.arc_for, table, g);
    for (int v = 0; v < n; ++v) {
      ExtendedValue got = payoff_profile(g, v, p, k);
      if (got > val[v])
        report.violations.push_back(
            {v, Owner::Max, maxs.as_strategy(table), got, val[v]});
    }
  }
  for (bool ok = mins.first(table); ok; ok = mins.next(table)) {
    Profile p = combine(table, pair.max_strategy.arc_for, g);
    for (int v = 0; v < n; ++v) {
      ExtendedValue got = payoff_profile(g, v, p, k);
      if (got < val[v])
        report.violations.push_back(
            {v, Owner::Min, mins.as_strategy(table), got, val[v]});
    }
  }
  report.ok = report.violations.empty();
  return report;
}

Game split_game(const Game& g) {
  std::vector<Game::Vertex> vertices = g.vertices;
  std::unordered_set<std::string> used;
  for (const auto& v : vertices) used.insert(v.id);
  for (std::size_t e = 0; e < g.arcs.size(); ++e) {
    const Game::Arc& a = g.arcs[e];
    std::string id = g.vertices[a.from].id + "." + g.vertices[a.to].id;
    if (!used.insert(id).second) {
      int suffix = 2;
      std::string candidate;
      do {
        candidate = id + "." + std::to_string(suffix++);
      } while (!used.insert(candidate).second);
      id = candidate;
    }
    vertices.push_back({id, g.vertices[a.from].owner});
  }
  std::vector<Game::Arc> arcs;
  arcs.reserve(2 * g.arcs.size());
  for (std::size_t e = 0; e < g.arcs.size(); ++e) {
    const Game::Arc& a = g.arcs[e];
    int w = g.n() + static_cast<int>(e);
    arcs.push_back({a.from, w, a.reward});
    arcs.push_back({w, a.to, -a.reward});
  }
  return Game(std::move(vertices), std::move(arcs), g.start);
}

StrategyPair lift_pair(const Game& original, const StrategyPair& pair) {
  validate_pair(original, pair);
  const int n = original.n();
  const int m = static_cast<int>(original.arcs.size());
  Strategy mn{Owner::Min, std::vector<int>(n + m, -1)};
  Strategy mx{Owner::Max, std::vector<int>(n + m, -1)};
  for (int v = 0; v < n; ++v) {
    Strategy& dst = original.vertices[v].owner == Owner::Min ? mn : mx;
    dst.arc_for[v] = 2 * pair.arc_at(original, v);
  }
  for (int e = 0; e < m; ++e) {
    Owner o = original.vertices[original.arcs[e].from].owner;
    (o == Owner::Min ? mn : mx).arc_for[n + e] = 2 * e + 1;
  }
  return {std::move(mn), std::move(mx)};
}

StrategyPair project_pair(const Game& original, const StrategyPair& split_pair) {
  const int n = original.n();
  Strategy mn{Owner::Min, std::vector<int>(n, -1)};
  Strategy mx{Owner::Max, std::vector<int>(n, -1)};
  for (int v = 0; v < n; ++v) {
    Owner o = original.vertices[v].owner;
    int e = o == Owner::Min ? split_pair.min_strategy.arc_for[v]
                            : split_pair.max_strategy.arc_for[v];
    if (e < 0 || e % 2 != 0)
      throw std::invalid_argument("split strategy does not map back to an arc");
    (o == Owner::Min ? mn : mx).arc_for[v] = e / 2;
  }
  return {std::move(mn), std::move(mx)};
}

Rational split_scale_factor(int k) {
  if (k < 0) throw std::invalid_argument("negative level");
  if (k == 0) return make_rational(1, 2);
  return Rational(Int(1) << static_cast<unsigned long>(k - 1));
}

}  // namespace ktotal
