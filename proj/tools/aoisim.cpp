#include <iostream>
#include <string>
#include <vector>

#include "aoi/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return aoi::cli::run(args, std::cout, std::cerr);
}
