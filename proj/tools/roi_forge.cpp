#include <iostream>
#include <string>
#include <vector>

#include "roi_forge/service.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return roi_forge::run_cli(args, std::cout, std::cerr);
}
