#include <iostream>
#include <string>
#include <vector>

#include "ktotal/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ktotal::run_cli(args, std::cout, std::cerr);
}
