#include <iostream>

#include "pickpoly_cli/cli.hpp"

int main(int argc, char** argv) {
  return pickpoly::cli::run({argv, argv + argc}, std::cout, std::cerr);
}
