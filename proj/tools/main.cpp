#include <iostream>

#include "homophily/cli.hpp"

int main(int argc, char** argv) {
  return homophily::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
