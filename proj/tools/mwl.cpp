#include <iostream>

#include "mwl/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mwl::run(args, std::cout, std::cerr);
}
