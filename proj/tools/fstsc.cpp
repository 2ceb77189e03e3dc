#include <iostream>
#include <string>
#include <vector>

#include "fstsc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fstsc::cli::dispatch(args, std::cout, std::cerr);
}
