#include "geocoord/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return geocoord::cli::run(argc, argv, std::cin, std::cout, std::cerr); }
