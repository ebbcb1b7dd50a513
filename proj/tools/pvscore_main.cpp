#include <iostream>

#include "pvscore/cli/commands.hpp"

int main(int argc, char** argv) {
  return pvscore::cli::run_cli(argc, argv, std::cout, std::cerr);
}
