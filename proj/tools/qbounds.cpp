#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "qbounds/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const char* env = std::getenv("QBOUNDS_OPTS");
  return qbounds::run_cli(args, env ? env : "", std::cin, std::cout, std::cerr);
}
