#include <iostream>

#include "anosograph/cli.hpp"

int main(int argc, char** argv) { return anosograph::cli::run(argc, argv, std::cout, std::cerr); }
