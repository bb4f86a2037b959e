#include <iostream>

#include "orbi_cli.hpp"

int main(int argc, char** argv) { return orbi::cli::run(argc, argv, std::cout, std::cerr); }
