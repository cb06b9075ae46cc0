#include <iostream>

#include "modlab/cli.hpp"

int main(int argc, char** argv) {
  return modlab::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
