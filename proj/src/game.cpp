#include "ktotal/game.hpp"

#include <algorithm>
#include <stdexcept>

namespace ktotal {

Game::Game(std::vector<Vertex> vs, std::vector<Arc> as, std::optional<int> st)
    : vertices(std::move(vs)), arcs(std::move(as)), start(st) {
  if (vertices.empty()) throw std::invalid_argument("game with no vertices");
  out_.resize(vertices.size());
  for (int v = 0; v < n(); ++v) {
    if (vertices[v].id.empty())
      throw std::invalid_argument("empty vertex id");
    if (!index_.emplace(vertices[v].id, v).second)
      throw std::invalid_argument("duplicate vertex id: " + vertices[v].id);
  }
  for (int e = 0; e < static_cast<int>(arcs.size()); ++e) {
    const Arc& a = arcs[e];
    if (a.from < 0 || a.from >= n() || a.to < 0 || a.to >= n())
      throw std::invalid_argument("arc endpoint out of range");
    out_[a.from].push_back(e);
  }
  for (int v = 0; v < n(); ++v)
    if (out_[v].empty())
      throw std::invalid_argument("vertex without outgoing arc: " + vertices[v].id);
  if (start && (*start < 0 || *start >= n()))
    throw std::invalid_argument("start vertex out of range");
}

std::optional<int> Game::vertex_index(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Int Game::max_abs_reward() const {
  Int m(0);
  for (const Arc& a : arcs)
    if (abs(a.reward) > m) m = abs(a.reward);
  return m;
}

void validate_strategy(const Game& g, const Strategy& s) {
  if (static_cast<int>(s.arc_for.size()) != g.n())
    throw std::invalid_argument("strategy table size mismatch");
  for (int v = 0; v < g.n(); ++v) {
    bool owned = g.vertices[v].owner == s.side;
    int e = s.arc_for[v];
    if (!owned) {
      if (e != -1)
        throw std::invalid_argument("strategy chooses at a vertex it does not own");
      continue;
    }
    if (e < 0 || e >= static_cast<int>(g.arcs.size()) || g.arcs[e].from != v)
      throw std::invalid_argument("strategy choice is not an out-arc of " +
                                  g.vertices[v].id);
  }
}

void validate_pair(const Game& g, const StrategyPair& pair) {
  if (pair.min_strategy.side != Owner::Min || pair.max_strategy.side != Owner::Max)
    throw std::invalid_argument("strategy pair sides are mislabeled");
  validate_strategy(g, pair.min_strategy);
  validate_strategy(g, pair.max_strategy);
}

StrategyPair lowest_arc_pair(const Game& g) {
  Strategy mn{Owner::Min, std::vector<int>(g.n(), -1)};
  Strategy mx{Owner::Max, std::vector<int>(g.n(), -1)};
  for (int v = 0; v < g.n(); ++v) {
    int e = g.out(v).front();
    (g.vertices[v].owner == Owner::Min ? mn : mx).arc_for[v] = e;
  }
  return {std::move(mn), std::move(mx)};
}

Lasso play_from(const Game& g, int v0, const StrategyPair& pair) {
  if (v0 < 0 || v0 >= g.n()) throw std::invalid_argument("start vertex out of range");
  std::vector<int> first_visit(g.n(), -1);
  Seq rewards;
  int cur = v0;
  int t = 0;
  first_visit[cur] = 0;
  for (;;) {
    int e = pair.arc_at(g, cur);
    rewards.push_back(Rational(g.arcs[e].reward));
    cur = g.arcs[e].to;
    ++t;
    if (first_visit[cur] >= 0) {
      int t0 = first_visit[cur];
      Seq prefix(rewards.begin(), rewards.begin() + t0);
      Seq cycle(rewards.begin() + t0, rewards.end());
      return Lasso(std::move(prefix), std::move(cycle));
    }
    first_visit[cur] = t;
  }
}

ExtendedValue payoff(const Game& g, int v0, const StrategyPair& pair, int k) {
  return k_total(play_from(g, v0, pair), k);
}

void validate_walk(const Game& g, const Walk& w) {
  if (w.start < 0 || w.start >= g.n())
    throw std::invalid_argument("walk start out of range");
  if (w.arcs.empty()) throw std::invalid_argument("walk must contain an arc");
  int cur = w.start;
  for (int e : w.arcs) {
    if (e < 0 || e >= static_cast<int>(g.arcs.size()))
      throw std::invalid_argument("walk arc out of range");
    if (g.arcs[e].from != cur)
      throw std::invalid_argument("walk arcs do not chain");
    cur = g.arcs[e].to;
  }
}

WalkDecomposition decompose_walk(const Game& g, const Walk& w) {
  validate_walk(g, w);
  WalkDecomposition out;
  // Remaining walk as 1-based original times; its arcs always chain.
  std::vector<long> current(w.arcs.size());
  for (std::size_t i = 0; i < w.arcs.size(); ++i) current[i] = static_cast<long>(i + 1);

  auto vertex_at = [&](const std::vector<long>& times, std::size_t pos) {
    // pos == 0 is the walk's start; pos >= 1 is the head of the pos-th arc.
    if (pos == 0) return w.start;
    return g.arcs[w.arcs[times[pos - 1] - 1]].to;
  };

  for (;;) {
    // Earliest repeated vertex in the remaining walk.
    std::vector<int> seen_pos(g.n(), -1);
    std::size_t repeat_at = 0, partner = 0;
    bool found = false;
    for (std::size_t pos = 0; pos <= current.size(); ++pos) {
      int v = vertex_at(current, pos);
      if (seen_pos[v] >= 0) {
        repeat_at = pos;
        partner = static_cast<std::size_t>(seen_pos[v]);
        found = true;
        break;
      }
      seen_pos[v] = static_cast<int>(pos);
    }
    if (!found) break;

    WalkDecomposition::Piece piece;
    piece.prefix_times.assign(current.begin(), current.begin() + partner);
    piece.cycle_times.assign(current.begin() + partner,
                             current.begin() + repeat_at);
    piece.p_marker = partner == 0 ? 0 : current[partner - 1];
    piece.q_marker = current[repeat_at - 1];
    out.lassos.push_back(piece);

    current.erase(current.begin() + partner, current.begin() + repeat_at);
  }

  if (out.lassos.empty()) {
    for (long t = 1; t <= static_cast<long>(w.arcs.size()); ++t)
      out.residual_tail_times.push_back(t);
  } else {
    out.residual_prefix_times = out.lassos.back().prefix_times;
    for (long t = out.lassos.back().q_marker + 1;
         t <= static_cast<long>(w.arcs.size()); ++t)
      out.residual_tail_times.push_back(t);
  }
  std::vector<long> residual = out.residual_prefix_times;
  residual.insert(residual.end(), out.residual_tail_times.begin(),
                  out.residual_tail_times.end());
  if (residual != current)
    throw std::logic_error("walk decomposition residual mismatch");
  return out;
}

Seq walk_rewards(const Game& g, const Walk& w) {
  Seq out;
  out.reserve(w.arcs.size());
  for (int e : w.arcs) out.push_back(Rational(g.arcs[e].reward));
  return out;
}

namespace {
Seq gather(const Seq& rewards, const std::vector<long>& times) {
  Seq out;
  out.reserve(times.size());
  for (long t : times) out.push_back(rewards[t - 1]);
  return out;
}
}  // namespace

DecompositionCheck verify_decomposition(const Game& g, const Walk& w,
                                        const Seq& rewards, int k) {
  if (rewards.size() != w.arcs.size())
    throw std::invalid_argument("rewards do not align with the walk");
  if (k < 0) throw std::invalid_argument("negative level");
  const long T = static_cast<long>(rewards.size());

  DecompositionCheck check;
  check.decomposition = decompose_walk(g, w);
  check.direct = sum_moment(rewards, k);

  Seq residual = gather(rewards, check.decomposition.residual_prefix_times);
  Seq tail = gather(rewards, check.decomposition.residual_tail_times);
  residual.insert(residual.end(), tail.begin(), tail.end());
  Rational acc = sum_moment(residual, k);

  for (const auto& piece : check.decomposition.lassos) {
    Seq pfx = gather(rewards, piece.prefix_times);
    Seq cyc = gather(rewards, piece.cycle_times);
    for (int l = 0; l <= k; ++l)
      acc += Rational(binom(T - piece.q_marker - 1 + k - l, k - l)) *
             sum_moment_delta(pfx, cyc, l);
  }
  check.expanded = acc;
  check.equal = (check.direct == check.expanded);
  return check;
}

}  // namespace ktotal
