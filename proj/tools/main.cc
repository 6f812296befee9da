#include <iostream>

#include "abskernel/cli.h"

int main(int argc, char** argv) {
  return abskernel::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
