#include <iostream>
#include <string>
#include <vector>

#include "dtower/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dtower::run_cli(args, std::cout, std::cerr);
}
