#include <iostream>

#include "speedscale/cli.hpp"

int main(int argc, char** argv) { return speedscale::cli::run_cli(argc, argv, std::cout, std::cerr); }
