#include <iostream>

#include "pcv/cli.hpp"

int main(int argc, char** argv) { return pcv::run_cli(argc, argv, std::cout, std::cerr); }
