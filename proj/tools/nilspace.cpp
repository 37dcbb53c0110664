#include <iostream>

#include "nilspace/cli.hpp"

int main(int argc, char** argv) { return nilspace::run_cli(argc, argv, std::cout, std::cerr); }
