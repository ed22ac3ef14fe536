#include <iostream>

#include "wavelife/cli.hpp"

int main(int argc, char** argv) { return wavelife::run_cli(argc, argv, std::cout, std::cerr); }
