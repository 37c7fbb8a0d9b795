#include <iostream>

#include "moment_forge/cli.hpp"

int main(int argc, char** argv) { return mforge::run_cli(argc, argv, std::cout, std::cerr); }
