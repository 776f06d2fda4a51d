#include <iostream>

#include "prefmatch/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return prefmatch::run_cli(args, std::cout, std::cerr);
}
