#include "focustree/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return focustree::run_cli(argc, argv, std::cout, std::cerr); }
