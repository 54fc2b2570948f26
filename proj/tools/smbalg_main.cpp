#include <iostream>  // for cout, cerr
#include <string>    // for string
#include <vector>    // for vector

#include "smbalg/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return smbalg::run_cli(args, std::cout, std::cerr);
}
