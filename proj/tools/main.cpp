#include <iostream>
#include <string>
#include <vector>

#include "hermbound/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hermbound::cli::run(args, std::cout, std::cerr);
}
