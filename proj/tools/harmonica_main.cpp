#include <iostream>

#include "harmonica/cli.hpp"

int main(int argc, char** argv) {
  return harmonica::run(argc, argv, std::cout, std::cerr);
}
