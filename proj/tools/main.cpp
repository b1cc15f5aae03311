#include <iostream>
#include <string>
#include <vector>

#include "erc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return erc::run_cli(args, std::cin, std::cout, std::cerr);
}
