#include <iostream>

#include "uaeval/cli.hpp"

int main(int argc, char** argv) {
  return uaeval::cli::run(argc, argv, std::cout, std::cerr);
}
