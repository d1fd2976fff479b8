#include <iostream>
#include <string>
#include <vector>

#include "tseval/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tseval::run_cli(args, std::cout, std::cerr);
}
