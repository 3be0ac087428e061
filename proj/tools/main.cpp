#include <iostream>

#include "cnq/tools/cli.hpp"

int main(int argc, char** argv) { return cnq::tools::main_entry(argc, argv, std::cout, std::cerr); }
