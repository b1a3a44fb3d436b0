#include <iostream>

#include "qleb/cli.hpp"

int main(int argc, char** argv) { return qleb::cli::run(argc, argv, std::cout, std::cerr); }
