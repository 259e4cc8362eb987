#include "subcheck/suite/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return subcheck::suite::run_cli(argc, argv, std::cout, std::cerr); }
