#include <iostream>

#include "bridgekit/cli.hpp"

int main(int argc, char** argv) { return bridgekit::cli::run(argc, argv, std::cout, std::cerr); }
