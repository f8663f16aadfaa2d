#include <iostream>
#include <string>
#include <vector>

#include "endobench/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return endobench::cli::run(args, std::cout, std::cerr);
}
