#include <iostream>

#include "nomafair/cli.hpp"

int main(int argc, char** argv) { return nomafair::run_cli(argc, argv, std::cout, std::cerr); }
