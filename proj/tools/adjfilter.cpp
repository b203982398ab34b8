#include <iostream>

#include "adjfilter/cli.hpp"

int main(int argc, char** argv) { return adjfilter::run_cli(argc, argv, std::cout, std::cerr); }
