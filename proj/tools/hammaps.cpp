#include <iostream>

#include "hammaps/cli.hpp"

int main(int argc, char** argv) {
  return hammaps::run_cli(argc, argv, std::cout, std::cerr);
}
