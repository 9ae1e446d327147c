#include <iostream>

#include "factorlat/cli.hpp"

int main(int argc, char** argv) {
  return factorlat::run_cli(argc, argv, std::cout, std::cerr);
}
