#include <iostream>

#include "ftnsim/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ftnsim::run_cli(args, std::cout, std::cerr);
}
