#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  return plreach::cli::run({argv, argv + argc}, std::cout, std::cerr);
}
