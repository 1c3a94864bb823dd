#include <iostream>

#include "spectra/cli.hpp"

int main(int argc, char** argv) { return spectra::run_cli(argc, argv, std::cout, std::cerr); }
