#include <iostream>
#include <string>
#include <vector>

#include "koopcrypt/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return koopcrypt::cli::run(args, std::cout, std::cerr);
}
