#include "ktotal/cli.hpp"

#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ktotal/game.hpp"
#include "ktotal/game_format.hpp"
#include "ktotal/lasso.hpp"
#include "ktotal/solver.hpp"

namespace ktotal {

namespace {

using Clock = std::chrono::steady_clock;
using ordered_json = nlohmann::ordered_json;

long elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0)
      .count();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Returns the game plus the scaling factor applied to rewards (1 = none).
std::pair<Game, Int> load_game(const std::string& path, bool allow_scale,
                               std::ostream& err) {
  GameDoc doc = parse_game_doc(read_file(path));
  if (!allow_scale) return {game_from_doc(doc), Int(1)};
  auto [game, factor] = scale_to_integer(doc);
  if (factor != 1)
    err << "warning: rewards scaled by " << factor.get_str()
        << "; reported values are for the scaled game\n";
  return {std::move(game), factor};
}

Seq parse_seq_csv(const std::string& csv) {
  Seq out;
  if (csv.empty()) return out;
  std::string cur;
  std::istringstream in(csv);
  while (std::getline(in, cur, ','))
    out.push_back(parse_rational(cur));
  if (!csv.empty() && csv.back() == ',')
    throw ParseError("trailing comma in sequence: " + csv);
  return out;
}

std::vector<Report::Choice> strategy_choices(const Game& g,
                                             const StrategyPair& pair) {
  std::vector<Report::Choice> out;
  for (int v = 0; v < g.n(); ++v) {
    int e = pair.arc_at(g, v);
    out.push_back({g.vertices[v].id, g.vertices[g.arcs[e].to].id, e});
  }
  return out;
}

std::vector<Report::Choice> side_choices(const Game& g, const Strategy& s) {
  std::vector<Report::Choice> out;
  for (int v = 0; v < g.n(); ++v) {
    int e = s.arc_for[v];
    if (e >= 0) out.push_back({g.vertices[v].id, g.vertices[g.arcs[e].to].id, e});
  }
  return out;
}

ordered_json choices_json(const std::vector<Report::Choice>& cs) {
  ordered_json arr = ordered_json::array();
  for (const auto& c : cs)
    arr.push_back({{"vertex", c.vertex}, {"to", c.to}, {"arc", c.arc}});
  return arr;
}

void print_report(const Report& r, bool as_json, std::ostream& out) {
  if (as_json) {
    ordered_json j;
    j["k"] = r.k;
    j["method"] = r.method;
    if (r.scale) j["scale"] = *r.scale;
    ordered_json values = ordered_json::object();
    for (const auto& v : r.values) values[v.vertex] = v.value;
    j["values"] = values;
    j["strategy"] = choices_json(r.strategy);
    if (r.saddle_ok) {
      ordered_json saddle;
      saddle["ok"] = *r.saddle_ok;
      ordered_json viols = ordered_json::array();
      for (const auto& viol : r.violations)
        viols.push_back({{"start", viol.start_vertex},
                         {"side", viol.side},
                         {"achieved", viol.achieved},
                         {"expected", viol.expected},
                         {"deviation", choices_json(viol.deviation)}});
      saddle["violations"] = viols;
      j["saddle"] = saddle;
    }
    j["time_ms"] = r.time_ms;
    out << j.dump(2) << '\n';
    return;
  }
  out << "k: " << r.k << '\n';
  out << "method: " << r.method << '\n';
  if (r.scale) out << "scale: " << *r.scale << '\n';
  out << "values:\n";
  for (const auto& v : r.values) out << "  " << v.vertex << " = " << v.value << '\n';
  out << "strategy:\n";
  for (const auto& c : r.strategy)
    out << "  " << c.vertex << " -> " << c.to << "  [arc " << c.arc << "]\n";
  if (r.saddle_ok) {
    if (*r.saddle_ok) {
      out << "saddle: ok\n";
    } else {
      out << "saddle: VIOLATED (" << r.violations.size() << " improving deviations)\n";
      for (const auto& viol : r.violations) {
        out << "  start " << viol.start_vertex << ": " << viol.side
            << " achieves " << viol.achieved << " instead of " << viol.expected
            << " via";
        for (const auto& c : viol.deviation)
          out << ' ' << c.vertex << "->" << c.to;
        out << '\n';
      }
    }
  }
  out << "time_ms: " << r.time_ms << '\n';
}

Report::Violation describe_violation(const Game& g,
                                     const SaddleReport::Violation& v) {
  return {g.vertices[v.start_vertex].id, owner_name(v.side), v.achieved.str(),
          v.expected.str(), side_choices(g, v.deviation)};
}

int cmd_eval(const std::string& prefix_csv, const std::string& cycle_csv, int k,
             bool as_json, std::ostream& out) {
  auto t0 = Clock::now();
  Seq prefix = parse_seq_csv(prefix_csv);
  Seq cycle = parse_seq_csv(cycle_csv);
  if (cycle.empty()) throw ParseError("--cycle must contain at least one entry");
  Lasso lasso(std::move(prefix), std::move(cycle));
  LassoClass cls = classify(lasso, k);
  ExtendedValue value = k_total(lasso, k);

  auto seq_strings = [](const Seq& s) {
    std::vector<std::string> out_strings;
    for (const Rational& v : s) out_strings.push_back(format_rational(v));
    return out_strings;
  };
  if (as_json) {
    ordered_json j;
    j["k"] = k;
    j["prefix"] = seq_strings(lasso.prefix);
    j["cycle"] = seq_strings(lasso.cycle);
    ordered_json c;
    c["good"] = cls.good;
    if (!cls.good) {
      c["level"] = cls.level;
      c["sign"] = cls.sign;
    }
    j["class"] = c;
    j["value"] = value.str();
    j["time_ms"] = elapsed_ms(t0);
    out << j.dump(2) << '\n';
  } else {
    out << "k: " << k << '\n';
    auto join = [&](const Seq& s) {
      std::string acc;
      for (const Rational& v : s) acc += (acc.empty() ? "" : ", ") + format_rational(v);
      return "[" + acc + "]";
    };
    out << "prefix: " << join(lasso.prefix) << '\n';
    out << "cycle: " << join(lasso.cycle) << '\n';
    if (cls.good)
      out << "class: good\n";
    else
      out << "class: bad (level " << cls.level << ", sign "
          << (cls.sign > 0 ? '+' : '-') << ")\n";
    out << "value: " << value.str() << '\n';
  }
  return 0;
}

int cmd_solve(const std::string& path, int k, const std::string& method,
              bool check, bool scale, long budget, bool as_json,
              std::ostream& out, std::ostream& err) {
  auto t0 = Clock::now();
  auto [game, factor] = load_game(path, scale, err);

  Solution sol = method == "enumerate" ? enumerate_solve(game, k, budget)
                                       : solve_k_total(game, k);
  Report r;
  r.k = k;
  r.method = method_name(sol.method);
  if (factor != 1) r.scale = factor.get_str();
  for (int v = 0; v < game.n(); ++v)
    r.values.push_back({game.vertices[v].id, sol.values[v].str()});
  r.strategy = strategy_choices(game, sol.pair);

  int exit_code = 0;
  if (check) {
    SaddleReport saddle = check_saddle(game, k, sol.pair, budget);
    r.saddle_ok = saddle.ok;
    for (const auto& v : saddle.violations)
      r.violations.push_back(describe_violation(game, v));
    if (!saddle.ok) exit_code = 2;
  }
  r.time_ms = elapsed_ms(t0);
  print_report(r, as_json, out);
  return exit_code;
}

int cmd_check(const std::string& game_path, const std::string& strategy_path,
              int k, bool scale, long budget, bool as_json, std::ostream& out,
              std::ostream& err) {
  auto t0 = Clock::now();
  auto [game, factor] = load_game(game_path, scale, err);
  StrategyPair pair = parse_strategy_pair(game, read_file(strategy_path));

  SaddleReport saddle = check_saddle(game, k, pair, budget);
  Report r;
  r.k = k;
  r.method = "check";
  if (factor != 1) r.scale = factor.get_str();
  for (int v = 0; v < game.n(); ++v)
    r.values.push_back({game.vertices[v].id, payoff(game, v, pair, k).str()});
  r.strategy = strategy_choices(game, pair);
  r.saddle_ok = saddle.ok;
  for (const auto& v : saddle.violations)
    r.violations.push_back(describe_violation(game, v));
  r.time_ms = elapsed_ms(t0);
  print_report(r, as_json, out);
  return saddle.ok ? 0 : 2;
}

int cmd_split(const std::string& path, bool scale, std::ostream& out,
              std::ostream& err) {
  auto [game, factor] = load_game(path, scale, err);
  (void)factor;
  out << serialize_game(split_game(game));
  return 0;
}

int cmd_decompose(const std::string& path, const std::string& walk_spec, int k,
                  bool scale, bool as_json, std::ostream& out,
                  std::ostream& err) {
  auto t0 = Clock::now();
  auto [game, factor] = load_game(path, scale, err);
  (void)factor;
  Walk walk = parse_walk(game, walk_spec);
  Seq rewards = walk_rewards(game, walk);
  DecompositionCheck check = verify_decomposition(game, walk, rewards, k);

  auto times_json = [](const std::vector<long>& ts) {
    ordered_json arr = ordered_json::array();
    for (long t : ts) arr.push_back(t);
    return arr;
  };
  if (as_json) {
    ordered_json j;
    j["k"] = k;
    j["walk_length"] = rewards.size();
    ordered_json lassos = ordered_json::array();
    for (const auto& piece : check.decomposition.lassos)
      lassos.push_back({{"prefix_times", times_json(piece.prefix_times)},
                        {"cycle_times", times_json(piece.cycle_times)},
                        {"p", piece.p_marker},
                        {"q", piece.q_marker}});
    j["lassos"] = lassos;
    j["residual"] = {
        {"prefix_times", times_json(check.decomposition.residual_prefix_times)},
        {"tail_times", times_json(check.decomposition.residual_tail_times)}};
    j["direct"] = format_rational(check.direct);
    j["expanded"] = format_rational(check.expanded);
    j["equal"] = check.equal;
    j["time_ms"] = elapsed_ms(t0);
    out << j.dump(2) << '\n';
  } else {
    auto join = [](const std::vector<long>& ts) {
      std::string acc;
      for (long t : ts) acc += (acc.empty() ? "" : ",") + std::to_string(t);
      return "[" + acc + "]";
    };
    out << "k: " << k << '\n';
    out << "walk length: " << rewards.size() << '\n';
    int i = 0;
    for (const auto& piece : check.decomposition.lassos)
      out << "lasso " << ++i << ": prefix times " << join(piece.prefix_times)
          << " cycle times " << join(piece.cycle_times) << " (p=" << piece.p_marker
          << ", q=" << piece.q_marker << ")\n";
    out << "residual: prefix times "
        << join(check.decomposition.residual_prefix_times) << " tail times "
        << join(check.decomposition.residual_tail_times) << '\n';
    out << "direct: " << format_rational(check.direct) << '\n';
    out << "expanded: " << format_rational(check.expanded) << '\n';
    out << "identity: " << (check.equal ? "ok" : "MISMATCH") << '\n';
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Exact k-total reward values of lasso streams and finite games"};
  app.require_subcommand(1);

  std::string prefix_csv, cycle_csv, game_path, strategy_path, walk_spec;
  std::string method = "reduction";
  int k = 0;
  bool as_json = false, do_check = false, do_scale = false;
  long budget = kDefaultBudget;

  CLI::App* eval = app.add_subcommand("eval", "Evaluate the k-total value of a lasso");
  eval->add_option("--prefix", prefix_csv, "Comma-separated prefix entries");
  eval->add_option("--cycle", cycle_csv, "Comma-separated cycle entries")->required();
  eval->add_option("--k", k, "Hierarchy level")->required()->check(CLI::NonNegativeNumber);
  eval->add_flag("--json", as_json, "JSON output");

  CLI::App* solve = app.add_subcommand("solve", "Solve a game under the k-total payoff");
  solve->add_option("game", game_path, "Game file")->required();
  solve->add_option("--k", k, "Hierarchy level")->required()->check(CLI::NonNegativeNumber);
  solve->add_option("--method", method, "reduction (default) or enumerate")
      ->check(CLI::IsMember({"reduction", "enumerate"}));
  solve->add_flag("--check", do_check, "Verify the saddle point afterwards");
  solve->add_flag("--scale", do_scale, "Scale rational rewards to integers");
  solve->add_option("--budget", budget, "Enumeration budget")
      ->check(CLI::PositiveNumber);
  solve->add_flag("--json", as_json, "JSON output");

  CLI::App* split = app.add_subcommand("split", "Emit the arc-subdivided game");
  split->add_option("game", game_path, "Game file")->required();
  split->add_flag("--scale", do_scale, "Scale rational rewards to integers");

  CLI::App* check = app.add_subcommand("check", "Check a strategy pair for a saddle point");
  check->add_option("game", game_path, "Game file")->required();
  check->add_option("strategy", strategy_path, "Strategy file")->required();
  check->add_option("--k", k, "Hierarchy level")->required()->check(CLI::NonNegativeNumber);
  check->add_flag("--scale", do_scale, "Scale rational rewards to integers");
  check->add_option("--budget", budget, "Enumeration budget")
      ->check(CLI::PositiveNumber);
  check->add_flag("--json", as_json, "JSON output");

  CLI::App* decompose =
      app.add_subcommand("decompose", "Peel a walk into lassos and verify the sum identity");
  decompose->add_option("game", game_path, "Game file")->required();
  decompose->add_option("--walk", walk_spec, "Comma-separated vertex ids")->required();
  decompose->add_option("--k", k, "Hierarchy level")->required()->check(CLI::NonNegativeNumber);
  decompose->add_flag("--scale", do_scale, "Scale rational rewards to integers");
  decompose->add_flag("--json", as_json, "JSON output");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (eval->parsed())
      return cmd_eval(prefix_csv, cycle_csv, k, as_json, out);
    if (solve->parsed())
      return cmd_solve(game_path, k, method, do_check, do_scale, budget, as_json,
                       out, err);
    if (split->parsed()) return cmd_split(game_path, do_scale, out, err);
    if (check->parsed())
      return cmd_check(game_path, strategy_path, k, do_scale, budget, as_json,
                       out, err);
    if (decompose->parsed())
      return cmd_decompose(game_path, walk_spec, k, do_scale, as_json, out, err);
    err << "error: no subcommand\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace ktotal
