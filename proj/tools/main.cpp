#include <iostream>
#include <string>
#include <vector>

#include "riesz_lab.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return riesz::lab::run(args, std::cout, std::cerr);
}
