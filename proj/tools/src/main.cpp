#include <iostream>

#include "gippa/cli/cli.hpp"

int main(int argc, char** argv) { return gippa::cli::run_cli(argc, argv, std::cout, std::cerr); }
