#include <iostream>

#include "artifact/cli.hpp"

int main(int argc, char** argv) { return artifact::run_cli(argc, argv, std::cout, std::cerr); }
