#include <iostream>

#include "graphon_lab/cli.hpp"

int main(int argc, char** argv) { return graphon_lab::cli::run(argc, argv, std::cout, std::cerr); }
