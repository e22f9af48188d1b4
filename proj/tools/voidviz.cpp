#include <iostream>
#include <string>
#include <vector>

#include "voidviz/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto parsed = voidviz::cli::parse_args(args, std::cout, std::cerr);
  if (!parsed.options) return parsed.exit_code;
  return voidviz::cli::run(*parsed.options, std::cin, std::cout, std::cerr);
}
