#include <iostream>

#include "bt/cli/cli.hpp"

int main(int argc, char** argv) {
  return bt::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
