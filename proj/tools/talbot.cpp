#include <iostream>
#include <string>
#include <vector>

#include "talbot/cli_app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return talbot::cli::run(args, std::cout, std::cerr);
}
