#include "intentest/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  intentest::cli::install_interrupt_handler();
  std::vector<std::string> args(argv + 1, argv + argc);
  return intentest::cli::dispatch(args, std::cout, std::cerr);
}
