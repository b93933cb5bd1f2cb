#include <iostream>

#include "sphfam/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sphfam::run_cli(args, std::cout, std::cerr);
}
