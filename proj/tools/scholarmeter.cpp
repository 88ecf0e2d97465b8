#include "scholarmeter/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return scholarmeter::cli::run_cli(argc, argv, std::cout, std::cerr); }
