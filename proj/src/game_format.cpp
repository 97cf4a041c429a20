#include "ktotal/game_format.hpp"

#include <map>
#include <sstream>
#include <unordered_map>

namespace ktotal {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::string clean = line.substr(0, line.find('#'));
  std::istringstream in(clean);
  std::vector<std::string> tokens;
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

[[noreturn]] void fail(int lineno, const std::string& what) {
  throw ParseError("line " + std::to_string(lineno) + ": " + what);
}

}  // namespace

GameDoc parse_game_doc(const std::string& text) {
  GameDoc doc;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<std::string> tok = tokenize(line);
    if (tok.empty()) continue;
    if (tok[0] == "vertex") {
      if (tok.size() != 3) fail(lineno, "expected: vertex <id> <MIN|MAX>");
      Owner o;
      if (tok[2] == "MIN")
        o = Owner::Min;
      else if (tok[2] == "MAX")
        o = Owner::Max;
      else
        fail(lineno, "owner must be MIN or MAX, got '" + tok[2] + "'");
      doc.vertices.push_back({tok[1], o});
    } else if (tok[0] == "arc") {
      if (tok.size() != 4) fail(lineno, "expected: arc <from> <to> <reward>");
      Rational r;
      try {
        r = parse_rational(tok[3]);
      } catch (const std::invalid_argument& e) {
        fail(lineno, e.what());
      }
      doc.arcs.push_back({tok[1], tok[2], r});
    } else if (tok[0] == "start") {
      if (tok.size() != 2) fail(lineno, "expected: start <id>");
      if (doc.start) fail(lineno, "duplicate start line");
      doc.start = tok[1];
    } else {
      fail(lineno, "unknown directive '" + tok[0] + "'");
    }
  }
  return doc;
}

namespace {

Game build_game(const GameDoc& doc,
                const std::vector<Int>& integer_rewards) {
  std::vector<Game::Vertex> vertices;
  std::unordered_map<std::string, int> index;
  for (const auto& v : doc.vertices) {
    if (!index.emplace(v.id, static_cast<int>(vertices.size())).second)
      throw ParseError("duplicate vertex id: " + v.id);
    vertices.push_back({v.id, v.owner});
  }
  auto resolve = [&](const std::string& id) {
    auto it = index.find(id);
    if (it == index.end()) throw ParseError("unknown vertex: " + id);
    return it->second;
  };
  std::vector<Game::Arc> arcs;
  for (std::size_t i = 0; i < doc.arcs.size(); ++i)
    arcs.push_back({resolve(doc.arcs[i].from), resolve(doc.arcs[i].to),
                    integer_rewards[i]});
  std::optional<int> start;
  if (doc.start) start = resolve(*doc.start);
  try {
    return Game(std::move(vertices), std::move(arcs), start);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

Game game_from_doc(const GameDoc& doc) {
  std::vector<Int> rewards;
  for (const auto& a : doc.arcs) {
    if (a.reward.get_den() != 1)
      throw ParseError("arc " + a.from + " -> " + a.to + " has reward " +
                       format_rational(a.reward) +
                       "; rewards must be integers (use --scale to multiply "
                       "all rewards by a common denominator)");
    rewards.push_back(a.reward.get_num());
  }
  return build_game(doc, rewards);
}

std::pair<Game, Int> scale_to_integer(const GameDoc& doc) {
  Int factor(1);
  for (const auto& a : doc.arcs)
    factor = lcm(factor, a.reward.get_den());
  std::vector<Int> rewards;
  for (const auto& a : doc.arcs) {
    Rational scaled = a.reward * Rational(factor);
    rewards.push_back(scaled.get_num());  // denominator is 1 by construction
  }
  return {build_game(doc, rewards), factor};
}

std::string serialize_game(const Game& g) {
  std::ostringstream out;
  for (const auto& v : g.vertices)
    out << "vertex " << v.id << ' ' << owner_name(v.owner) << '\n';
  for (const auto& a : g.arcs)
    out << "arc " << g.vertices[a.from].id << ' ' << g.vertices[a.to].id << ' '
        << a.reward.get_str() << '\n';
  if (g.start) out << "start " << g.vertices[*g.start].id << '\n';
  return out.str();
}

StrategyPair parse_strategy_pair(const Game& g, const std::string& text) {
  std::vector<int> chosen(g.n(), -1);
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<std::string> tok = tokenize(line);
    if (tok.empty()) continue;
    if (tok[0] != "choose" || tok.size() != 3)
      fail(lineno, "expected: choose <vertex> <to-vertex-or-arc-index>");
    auto vi = g.vertex_index(tok[1]);
    if (!vi) fail(lineno, "unknown vertex: " + tok[1]);
    if (chosen[*vi] != -1) fail(lineno, "duplicate choice for vertex " + tok[1]);

    const std::string& target = tok[2];
    bool is_index = !target.empty() &&
                    target.find_first_not_of("0123456789") == std::string::npos;
    int arc = -1;
    if (is_index) {
      std::size_t idx;
      try {
        idx = std::stoul(target);
      } catch (const std::out_of_range&) {
        fail(lineno, "out-arc index too large: " + target);
      }
      if (idx >= g.out(*vi).size())
        fail(lineno, "vertex " + tok[1] + " has only " +
                         std::to_string(g.out(*vi).size()) + " out-arcs");
      arc = g.out(*vi)[idx];
    } else {
      auto ti = g.vertex_index(target);
      if (!ti) fail(lineno, "unknown vertex: " + target);
      for (int e : g.out(*vi)) {
        if (g.arcs[e].to != *ti) continue;
        if (arc != -1)
          fail(lineno, "multiple arcs " + tok[1] + " -> " + target +
                           "; choose by out-arc index instead");
        arc = e;
      }
      if (arc == -1) fail(lineno, "no arc " + tok[1] + " -> " + target);
    }
    chosen[*vi] = arc;
  }

  std::string missing;
  for (int v = 0; v < g.n(); ++v)
    if (chosen[v] == -1) missing += (missing.empty() ? "" : ", ") + g.vertices[v].id;
  if (!missing.empty())
    throw ParseError("strategy file misses choices for: " + missing);

  Strategy mn{Owner::Min, std::vector<int>(g.n(), -1)};
  Strategy mx{Owner::Max, std::vector<int>(g.n(), -1)};
  for (int v = 0; v < g.n(); ++v)
    (g.vertices[v].owner == Owner::Min ? mn : mx).arc_for[v] = chosen[v];
  return {std::move(mn), std::move(mx)};
}

Walk parse_walk(const Game& g, const std::string& spec) {
  std::vector<std::string> ids;
  std::string cur;
  for (char c : spec) {
    if (c == ',') {
      ids.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  ids.push_back(cur);
  if (ids.size() < 2)
    throw ParseError("a walk needs at least two vertices");

  std::vector<int> vs;
  for (const std::string& id : ids) {
    auto vi = g.vertex_index(id);
    if (!vi) throw ParseError("unknown vertex in walk: '" + id + "'");
    vs.push_back(*vi);
  }
  Walk w{vs[0], {}};
  for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
    int arc = -1;
    for (int e : g.out(vs[i]))
      if (g.arcs[e].to == vs[i + 1]) {
        arc = e;
        break;
      }
    if (arc == -1)
      throw ParseError("no arc " + ids[i] + " -> " + ids[i + 1]);
    w.arcs.push_back(arc);
  }
  return w;
}

}  // namespace ktotal
