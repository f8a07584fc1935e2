#include <iostream>

#include "arbor/cli.hpp"

int main(int argc, char** argv) { return arbor::cli_main(argc, argv, std::cout, std::cerr); }
