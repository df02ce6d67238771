#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "crowngraft/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return crowngraft::run(args, std::cin, std::cout, std::cerr, std::getenv("CROWNGRAFT_TOL"));
}
