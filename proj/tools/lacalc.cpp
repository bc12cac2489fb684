#include <iostream>
#include <string>
#include <vector>

#include "lac/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lac::cli::execute(args, std::cout, std::cerr);
}
