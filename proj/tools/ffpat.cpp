#include <iostream>
#include <string>
#include <vector>

#include "ffpat/cli/run.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ffpat::cli::run(args, std::cout, std::cerr);
}
