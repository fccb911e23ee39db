#include <iostream>

#include "blocklcs/cli.hpp"

int main(int argc, char** argv) { return blocklcs::cli::run(argc, argv, std::cout, std::cerr); }
