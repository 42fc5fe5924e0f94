#include <iostream>

#include "kstar/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return kstar::run_cli(args, std::cout, std::cerr);
}
