#include <iostream>
#include <string>
#include <vector>

#include "graphmem/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return graphmem::cli::main(args, std::cout, std::cerr);
}
