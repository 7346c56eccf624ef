#include <iostream>

#include "magball/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return magball::cli::run_cli(args, std::cout, std::cerr);
}
