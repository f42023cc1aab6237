#include <iostream>

#include "thicksum/cli.hpp"

int main(int argc, char** argv) {
  return thicksum::run_cli(argc, argv, std::cout, std::cerr);
}
