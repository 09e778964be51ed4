#include <iostream>

#include "market_rewire/cli.hpp"

int main(int argc, char** argv) { return market_rewire::cli::main(argc, argv, std::cout, std::cerr); }
