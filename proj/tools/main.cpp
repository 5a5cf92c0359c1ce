#include <iostream>
#include <string>
#include <vector>

#include "cheb/cli.hpp"

int main(int argc, char** argv) {
  return cheb::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
