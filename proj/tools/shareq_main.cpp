#include <iostream>

#include "shareq/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return shareq::run_cli(args, std::cout, std::cerr);
}
