#include "frackell_cli/cli.hpp"

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return frackell::cli::run(args, std::cout, std::cerr, std::getenv("FRACKELL_DIGITS"));
}
