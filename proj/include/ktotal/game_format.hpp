#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ktotal/game.hpp"
#include "ktotal/rational.hpp"

namespace ktotal {

// Parsed form of the game text format, before the integrality requirement
// is applied. Lines: `vertex <id> <MIN|MAX>`, `arc <from> <to> <reward>`,
// optional `start <id>`; `#` starts a comment; blank lines ignored.
struct GameDoc {
  struct VertexLine {
    std::string id;
    Owner owner;
  };
  struct ArcLine {
    std::string from;
    std::string to;
    Rational reward;
  };
  std::vector<VertexLine> vertices;
  std::vector<ArcLine> arcs;
  std::optional<std::string> start;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

GameDoc parse_game_doc(const std::string& text);

// Rejects non-integer rewards (they must be pre-scaled; see scale_to_integer).
Game game_from_doc(const GameDoc& doc);

// Multiplies every reward by the least common multiple of the denominators
// and returns that factor alongside the now-integral game. Values of the
// scaled game are the original values times the factor.
std::pair<Game, Int> scale_to_integer(const GameDoc& doc);

// Canonical serialization; parses back to an identical game.
std::string serialize_game(const Game& g);

// Strategy file: one `choose <vertex> <target>` line per vertex, where
// target is either a successor vertex id (only when that successor is
// reached by exactly one arc) or a 0-based index into the vertex's out-arcs.
StrategyPair parse_strategy_pair(const Game& g, const std::string& text);

// Comma-separated vertex ids; consecutive vertices are joined by the
// lowest-index arc between them.
Walk parse_walk(const Game& g, const std::string& spec);

}  // namespace ktotal
