#include <iostream>
#include <string>
#include <vector>

#include "renas/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return renas::run_cli(args, std::cout, std::cerr);
}
