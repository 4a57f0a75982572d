#include <iostream>

#include "relatio/cli.hpp"

int main(int argc, char** argv) { return relatio::run_cli(argc, argv, std::cout, std::cerr); }
