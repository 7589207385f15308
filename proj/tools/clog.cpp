#include <iostream>
#include <string>
#include <vector>

#include "contlog/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return contlog::run_cli(args, std::cout, std::cerr);
}
