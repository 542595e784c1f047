#include <iostream>

#include "layoutlab/cli.hpp"

int main(int argc, char** argv) { return layoutlab::run_cli(argc, argv, std::cout, std::cerr); }
