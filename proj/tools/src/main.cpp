#include <iostream>

#include "raysplit_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return raysplit::cli::run(args, std::cout, std::cerr);
}
