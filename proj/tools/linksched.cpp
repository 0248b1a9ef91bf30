#include <iostream>

#include "linksched/cli.hpp"

int main(int argc, char** argv) { return linksched::run_cli(argc, argv, std::cout, std::cerr); }
