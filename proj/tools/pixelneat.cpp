#include <iostream>

#include "pixelneat/cli/cli.hpp"

int main(int argc, char** argv) { return pixelneat::cli::run(argc, argv, std::cout, std::cerr); }
