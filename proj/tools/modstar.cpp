#include <iostream>

#include "modstar/cli.hpp"

int main(int argc, char** argv) { return modstar::cli_main(argc, argv, std::cout, std::cerr); }
