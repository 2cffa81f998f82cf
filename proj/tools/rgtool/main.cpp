#include <iostream>

#include "rgtool/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return rgtool::run(args, std::cout, std::cerr);
}
