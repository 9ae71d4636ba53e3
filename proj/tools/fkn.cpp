#include <iostream>

#include "fkn/cli.hpp"

int main(int argc, char **argv) { return fkn::cli::run(argc, argv, std::cout, std::cerr); }
