#include <iostream>
#include <string>
#include <vector>

#include "qtms/cli_report.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qtms::report::run(args, std::cout, std::cerr);
}
