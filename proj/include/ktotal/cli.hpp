#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ktotal {

// Structured result of a solve/check run; serialized as text or JSON with
// exact value strings that round-trip through the rational parser.
struct Report {
  int k = 0;
  std::string method;
  struct Value {
    std::string vertex;
    std::string value;
  };
  std::vector<Value> values;
  struct Choice {
    std::string vertex;
    std::string to;
    int arc;  // global arc index
  };
  std::vector<Choice> strategy;
  struct Violation {
    std::string start_vertex;
    std::string side;
    std::string achieved;
    std::string expected;
    std::vector<Choice> deviation;
  };
  std::optional<bool> saddle_ok;
  std::vector<Violation> violations;
  std::optional<std::string> scale;
  long time_ms = 0;
};

// Runs the `ktotal` command line (args exclude the program name).
// Exit codes: 0 success, 1 input/usage error, 2 saddle violation found.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace ktotal
