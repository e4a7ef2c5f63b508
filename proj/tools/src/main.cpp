#include "spinsys/cli/commands.hpp"

#include <iostream>

int main(int argc, char** argv) { return spinsys::cli::run_cli(argc, argv, std::cout, std::cerr); }
