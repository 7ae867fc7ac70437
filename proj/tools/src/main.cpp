#include <iostream>
#include <string>
#include <vector>

#include "afterimage_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return afterimage::cli::run(args, std::cout, std::cerr);
}
