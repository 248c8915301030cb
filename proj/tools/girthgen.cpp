#include "girthgen/cli.hpp"

#include <iostream>

int main(int argc, char **argv) { return girthgen::run_cli(argc, argv, std::cout, std::cerr); }
