#include <iostream>

#include "cloudlab/cli.hpp"

int main(int argc, char** argv) {
  return cloudlab::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
