#include <iostream>

#include "trel/cli.hpp"

int main(int argc, char** argv) { return trel::run_cli(argc, argv, std::cout, std::cerr); }
