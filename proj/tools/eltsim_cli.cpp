#include <iostream>
#include <string>
#include <vector>

#include "eltsim/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return eltsim::cli::run(args, std::cout, std::cerr);
}
