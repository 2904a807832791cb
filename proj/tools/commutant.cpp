#include <iostream>

#include "commutant/cli.hpp"

int main(int argc, char** argv) {
  return commutant::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
