#include <iostream>

#include "zerosum/cli.hpp"

int main(int argc, char** argv) { return zerosum::cli_dispatch(argc, argv, std::cout, std::cerr); }
