#include <iostream>

#include "mvbu/cli.hpp"

int main(int argc, char** argv) { return mvbu::cli_main(argc, argv, std::cout, std::cerr); }
