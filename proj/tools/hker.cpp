#include <iostream>

#include "hker/cli.hpp"

int main(int argc, char** argv) {
  return hker::cli::run(argc, argv, std::cout, std::cerr);
}
