#include <iostream>

#include "spinlab/cli.hpp"

int main(int argc, char** argv) {
  return spinlab::cli::run(argc, argv, std::cout, std::cerr);
}
