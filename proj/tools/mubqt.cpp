#include <iostream>
#include <string>
#include <vector>

#include "mubqt/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mubqt::run_cli(args, std::cout, std::cerr);
}
