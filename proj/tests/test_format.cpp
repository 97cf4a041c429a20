#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "ktotal/game.hpp"
#include "ktotal/game_format.hpp"
#include "testutil.hpp"

using namespace ktotal;
using namespace ktotal::tu;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "cannot open " << path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string data_file(const std::string& name) {
  return read_file(std::string(KTOTAL_DATA_DIR) + "/" + name);
}

Game parallel_game() {
  return game_from_doc(parse_game_doc(
      "vertex a MAX\nvertex b MIN\narc a b 1\narc a b 2\narc b a 0\n"));
}

void check_same_game(const Game& a, const Game& b) {
  REQUIRE(a.n() == b.n());
  REQUIRE(a.arcs.size() == b.arcs.size());
  for (int v = 0; v < a.n(); ++v) {
    CHECK(a.vertices[v].id == b.vertices[v].id);
    CHECK(a.vertices[v].owner == b.vertices[v].owner);
  }
  for (std::size_t e = 0; e < a.arcs.size(); ++e) {
    CHECK(a.arcs[e].from == b.arcs[e].from);
    CHECK(a.arcs[e].to == b.arcs[e].to);
    CHECK(a.arcs[e].reward == b.arcs[e].reward);
  }
  CHECK(a.start == b.start);
}

}  // namespace

TEST_CASE("document parsing") {
  GameDoc doc = parse_game_doc(
      "# a tiny game\n"
      "\n"
      "vertex a MAX   # the maximizer\n"
      "vertex b MIN\n"
      "arc a b 1/2\n"
      "arc b a -3\n"
      "start b\n");
  REQUIRE(doc.vertices.size() == 2);
  CHECK(doc.vertices[0].id == "a");
  CHECK(doc.vertices[0].owner == Owner::Max);
  CHECK(doc.vertices[1].owner == Owner::Min);
  REQUIRE(doc.arcs.size() == 2);
  CHECK(doc.arcs[0].from == "a");
  CHECK(doc.arcs[0].to == "b");
  CHECK(doc.arcs[0].reward == rq(1, 2));
  CHECK(doc.arcs[1].reward == rq(-3, 1));
  CHECK(doc.start == "b");
}

TEST_CASE("document parse errors carry line numbers") {
  CHECK_THROWS_WITH_AS(parse_game_doc("vertex a\n"),
                       "line 1: expected: vertex <id> <MIN|MAX>", ParseError);
  CHECK_THROWS_WITH_AS(parse_game_doc("vertex a MAX\nvertex b mid\n"),
                       "line 2: owner must be MIN or MAX, got 'mid'",
                       ParseError);
  CHECK_THROWS_WITH_AS(parse_game_doc("arc a b\n"),
                       "line 1: expected: arc <from> <to> <reward>",
                       ParseError);
  CHECK_THROWS_WITH_AS(parse_game_doc("arc a b x7\n"),
                       "line 1: bad rational literal: x7", ParseError);
  CHECK_THROWS_WITH_AS(parse_game_doc("arc a b 1/0\n"),
                       "line 1: zero denominator in rational literal: 1/0",
                       ParseError);
  CHECK_THROWS_WITH_AS(parse_game_doc("start\n"), "line 1: expected: start <id>",
                       ParseError);
  CHECK_THROWS_WITH_AS(
      parse_game_doc("vertex a MAX\narc a a 0\nstart a\nstart a\n"),
      "line 4: duplicate start line", ParseError);
  CHECK_THROWS_WITH_AS(parse_game_doc("vertx a MAX\n"),
                       "line 1: unknown directive 'vertx'", ParseError);
}

TEST_CASE("building a game from a document") {
  Game g = game_from_doc(parse_game_doc(data_file("five_plays.game")));
  CHECK(g.n() == 10);
  CHECK(g.arcs.size() == 14);
  CHECK(g.start == 0);

  CHECK_THROWS_WITH_AS(
      game_from_doc(parse_game_doc("vertex a MAX\narc a a 1/2\n")),
      "arc a -> a has reward 1/2; rewards must be integers (use --scale to "
      "multiply all rewards by a common denominator)",
      ParseError);
  CHECK_THROWS_WITH_AS(
      game_from_doc(parse_game_doc("vertex a MAX\nvertex a MIN\narc a a 0\n")),
      "duplicate vertex id: a", ParseError);
  CHECK_THROWS_WITH_AS(
      game_from_doc(parse_game_doc("vertex a MAX\narc a c 0\n")),
      "unknown vertex: c", ParseError);
  CHECK_THROWS_WITH_AS(
      game_from_doc(parse_game_doc("vertex a MAX\narc a a 0\nstart s\n")),
      "unknown vertex: s", ParseError);
  CHECK_THROWS_WITH_AS(
      game_from_doc(
          parse_game_doc("vertex a MAX\nvertex b MIN\narc a b 1\n")),
      "vertex without outgoing arc: b", ParseError);
}

TEST_CASE("pre-scaling fractional rewards") {
  GameDoc doc = parse_game_doc(
      "vertex a MAX\nvertex b MIN\narc a b 1/2\narc b a 1/3\nstart a\n");
  auto [g, factor] = scale_to_integer(doc);
  CHECK(factor == 6);
  CHECK(g.arcs[0].reward == 3);
  CHECK(g.arcs[1].reward == 2);

  auto [h, one] = scale_to_integer(parse_game_doc(data_file("tug.game")));
  CHECK(one == 1);
  CHECK(h.n() == 2);

  // non-reduced literals are canonicalized before scaling
  auto [r, two] = scale_to_integer(
      parse_game_doc("vertex a MAX\narc a a 2/4\n"));
  CHECK(two == 2);
  CHECK(r.arcs[0].reward == 1);

  // every scaled reward is the document reward times the factor
  Rng rng(20240821);
  for (int iter = 0; iter < 20; ++iter) {
    GameDoc d;
    d.vertices.push_back({"a", Owner::Max});
    d.vertices.push_back({"b", Owner::Min});
    for (int e = 0; e < 4; ++e)
      d.arcs.push_back({e % 2 ? "a" : "b", e % 2 ? "b" : "a",
                        rq(rand_int(rng, -9, 9), rand_int(rng, 1, 12))});
    auto [game, f] = scale_to_integer(d);
    REQUIRE(f >= 1);
    for (std::size_t e = 0; e < d.arcs.size(); ++e)
      CHECK(Rational(game.arcs[e].reward) == d.arcs[e].reward * Rational(f));
  }
}

TEST_CASE("serialization round-trips") {
  Game tiny = game_from_doc(parse_game_doc(
      "vertex a MAX\nvertex b MIN\narc a b 3\narc b a -1\nstart a\n"));
  CHECK(serialize_game(tiny) ==
        "vertex a MAX\nvertex b MIN\narc a b 3\narc b a -1\nstart a\n");

  for (const char* name :
       {"five_plays.game", "five_plays_min.game", "tug.game",
        "zero_loop.game"}) {
    Game g = game_from_doc(parse_game_doc(data_file(name)));
    Game back = game_from_doc(parse_game_doc(serialize_game(g)));
    check_same_game(g, back);
  }

  Rng rng(20240822);
  for (int iter = 0; iter < 30; ++iter) {
    Game g = random_game(rng, 8, 3, -9, 9);
    Game back = game_from_doc(parse_game_doc(serialize_game(g)));
    check_same_game(g, back);
  }
}

TEST_CASE("strategy files") {
  Game g = game_from_doc(parse_game_doc(data_file("five_plays.game")));
  std::string all_but_v0 =
      "choose v1 v2\nchoose v2 v3\nchoose v3 v4\nchoose v4 v1\n"
      "choose v5 v6\nchoose v6 v7\nchoose v7 v8\nchoose v8 v5\n"
      "choose v9 v9\n";

  StrategyPair by_id = parse_strategy_pair(g, "choose v0 v5\n" + all_but_v0);
  validate_pair(g, by_id);
  CHECK(by_id.arc_at(g, 0) == 3);
  CHECK(by_id.arc_at(g, 9) == 13);
  CHECK(by_id.min_strategy.arc_for == std::vector<int>(10, -1));

  StrategyPair by_index = parse_strategy_pair(g, "choose v0 3\n" + all_but_v0);
  CHECK(by_index.arc_at(g, 0) == 3);

  CHECK_THROWS_WITH_AS(
      parse_strategy_pair(g, "grab v0 3\n"),
      "line 1: expected: choose <vertex> <to-vertex-or-arc-index>", ParseError);
  CHECK_THROWS_WITH_AS(parse_strategy_pair(g, "choose zz 0\n"),
                       "line 1: unknown vertex: zz", ParseError);
  CHECK_THROWS_WITH_AS(parse_strategy_pair(g, "choose v0 zz\n"),
                       "line 1: unknown vertex: zz", ParseError);
  CHECK_THROWS_WITH_AS(
      parse_strategy_pair(g, "choose v0 0\nchoose v0 1\n"),
      "line 2: duplicate choice for vertex v0", ParseError);
  CHECK_THROWS_WITH_AS(parse_strategy_pair(g, "choose v9 1\n"),
                       "line 1: vertex v9 has only 1 out-arcs", ParseError);
  CHECK_THROWS_WITH_AS(
      parse_strategy_pair(g, "choose v0 99999999999999999999999\n"),
      "line 1: out-arc index too large: 99999999999999999999999", ParseError);
  CHECK_THROWS_WITH_AS(parse_strategy_pair(g, "choose v1 v5\n"),
                       "line 1: no arc v1 -> v5", ParseError);
  CHECK_THROWS_WITH_AS(
      parse_strategy_pair(g, "choose v0 v5\nchoose v1 v2\nchoose v2 v3\n"
                             "choose v4 v1\nchoose v5 v6\nchoose v6 v7\n"
                             "choose v8 v5\nchoose v9 v9\n"),
      "strategy file misses choices for: v3, v7", ParseError);

  Game par = parallel_game();
  CHECK_THROWS_WITH_AS(
      parse_strategy_pair(par, "choose a b\nchoose b a\n"),
      "line 1: multiple arcs a -> b; choose by out-arc index instead",
      ParseError);
  StrategyPair picked =
      parse_strategy_pair(par, "choose a 1\nchoose b a\n");
  CHECK(picked.arc_at(par, 0) == 1);
  CHECK(picked.arc_at(par, 1) == 2);
}

TEST_CASE("walk specifications") {
  Game g = game_from_doc(parse_game_doc(data_file("five_plays.game")));
  Walk w = parse_walk(g, "v0,v5,v6,v7,v8,v5,v6");
  CHECK(w.start == 0);
  CHECK(w.arcs == std::vector<int>{3, 9, 10, 11, 12, 9});
  validate_walk(g, w);

  // between two vertices joined by several arcs, the lowest-index one wins
  Game par = parallel_game();
  CHECK(parse_walk(par, "a,b").arcs == std::vector<int>{0});

  CHECK_THROWS_WITH_AS(parse_walk(g, "v0"), "a walk needs at least two vertices",
                       ParseError);
  CHECK_THROWS_WITH_AS(parse_walk(g, "v0,zz"), "unknown vertex in walk: 'zz'",
                       ParseError);
  CHECK_THROWS_WITH_AS(parse_walk(g, ","), "unknown vertex in walk: ''",
                       ParseError);
  CHECK_THROWS_WITH_AS(parse_walk(g, "v1,v5"), "no arc v1 -> v5", ParseError);
}
