#include <iostream>

#include "frontlab/cli.hpp"

int main(int argc, char** argv) { return frontlab::cli::run(argc, argv, std::cout, std::cerr); }
