#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return soergel::run_cli({argv, argv + argc}, std::cout, std::cerr); }
