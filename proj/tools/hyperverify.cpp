#include <iostream>

#include "hyperverify/cli.hpp"

int main(int argc, char** argv) { return hyperverify::cli_main(argc, argv, std::cout, std::cerr); }
