#include <iostream>

#include "mrlrc/cli.hpp"

int main(int argc, char** argv) { return mrlrc::run_cli(argc, argv, std::cout, std::cerr); }
