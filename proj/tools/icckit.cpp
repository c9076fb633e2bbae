#include <iostream>

#include "icckit/cli.hpp"

int main(int argc, char** argv) { return icckit::run_cli(argc, argv, std::cout, std::cerr); }
