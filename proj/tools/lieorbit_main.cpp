#include "lieorbit/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return lieorbit::cli::run(argc, argv, std::cout, std::cerr); }
