#include <iostream>

#include "dbicc/cli/commands.hpp"

int main(int argc, char** argv) {
  return dbicc::cli::run(argc, argv, std::cout, std::cerr);
}
