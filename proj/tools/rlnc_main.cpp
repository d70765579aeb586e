#include <iostream>
#include <string>
#include <vector>

#include "rlnc/cli.hpp"

int main(int argc, char** argv) {
  return rlnc::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
