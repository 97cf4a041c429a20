#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ktotal/lasso.hpp"
#include "ktotal/rational.hpp"
#include "ktotal/seq.hpp"

namespace ktotal {

enum class Owner { Min, Max };

inline const char* owner_name(Owner o) { return o == Owner::Min ? "MIN" : "MAX"; }

// Finite directed multigraph game. Every vertex is owned by one player and
// has at least one outgoing arc; arc rewards are integers.
struct Game {
  struct Vertex {
    std::string id;
    Owner owner;
  };
  struct Arc {
    int from;
    int to;
    Int reward;
  };

  Game(std::vector<Vertex> vertices, std::vector<Arc> arcs,
       std::optional<int> start = std::nullopt);

  int n() const { return static_cast<int>(vertices.size()); }
  const std::vector<int>& out(int v) const { return out_[v]; }
  std::optional<int> vertex_index(const std::string& id) const;
  Int max_abs_reward() const;

  std::vector<Vertex> vertices;
  std::vector<Arc> arcs;
  std::optional<int> start;

 private:
  std::vector<std::vector<int>> out_;
  std::unordered_map<std::string, int> index_;
};

// Pure stationary strategy of one side: for every vertex owned by that side,
// the index of the chosen outgoing arc; -1 on the other side's vertices.
struct Strategy {
  Owner side;
  std::vector<int> arc_for;
};

struct StrategyPair {
  Strategy min_strategy;
  Strategy max_strategy;

  int arc_at(const Game& g, int v) const {
    return g.vertices[v].owner == Owner::Min ? min_strategy.arc_for[v]
                                             : max_strategy.arc_for[v];
  }
};

// Throws std::invalid_argument when a strategy is not a valid total choice
// of out-arcs for its side.
void validate_strategy(const Game& g, const Strategy& s);
void validate_pair(const Game& g, const StrategyPair& pair);

// Every vertex picks its lowest-index outgoing arc.
StrategyPair lowest_arc_pair(const Game& g);

// The play from v0 under a fixed strategy pair, as a lasso: arcs followed
// until the first vertex repetition; p + q <= n always holds.
Lasso play_from(const Game& g, int v0, const StrategyPair& pair);

// k-total value of the play from v0.
ExtendedValue payoff(const Game& g, int v0, const StrategyPair& pair, int k);

// A finite walk: a start vertex and a chain of arcs (each arc's tail is the
// previous arc's head).
struct Walk {
  int start;
  std::vector<int> arcs;
};

void validate_walk(const Game& g, const Walk& w);

// Peeling a walk into lassos: repeatedly find the earliest repeated vertex,
// cut out the cycle it closes together with the simple path in front of it
// (a lasso), and continue on what remains; a simple path is left at the end.
// All index lists hold 1-based positions into the original walk and together
// partition [1, T].
struct WalkDecomposition {
  struct Piece {
    std::vector<long> prefix_times;
    std::vector<long> cycle_times;
    long p_marker;  // time of the arc entering the cycle's base vertex; 0 if
                    // the cycle starts at the walk's start vertex
    long q_marker;  // time of the arc closing the cycle
  };
  std::vector<Piece> lassos;
  std::vector<long> residual_prefix_times;
  std::vector<long> residual_tail_times;
};

WalkDecomposition decompose_walk(const Game& g, const Walk& w);

// Both sides of the walk identity
//   S(M^k(rewards)) = S(M^k(residual))
//     + sum_j sum_{l=0..k} C(T-q_j-1+k-l, k-l) * delta_l(P_j, C_j)
// evaluated exactly; `equal` must hold for every walk.
struct DecompositionCheck {
  bool equal;
  Rational direct;
  Rational expanded;
  WalkDecomposition decomposition;
};

DecompositionCheck verify_decomposition(const Game& g, const Walk& w,
                                        const Seq& rewards, int k);

// Reward sequence read off the walk's arcs.
Seq walk_rewards(const Game& g, const Walk& w);

}  // namespace ktotal
