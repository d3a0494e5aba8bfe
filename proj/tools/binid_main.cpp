#include <iostream>
#include <string>
#include <vector>

#include "binid/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return binid::cli::run(args, std::cout, std::cerr);
}
