#include <iostream>

#include "scriptrev/cli.hpp"

int main(int argc, char** argv) { return scriptrev::cli::main(argc, argv, std::cout, std::cerr); }
