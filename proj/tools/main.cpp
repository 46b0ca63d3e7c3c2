#include <iostream>

#include "lmu/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lmu::run_cli(args, std::cout, std::cerr);
}
