#include <iostream>

#include "tiectl/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tiectl::run_command(args, std::cout, std::cerr);
}
