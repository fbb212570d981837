#include <iostream>

#include "boxmf/cli.hpp"

int main(int argc, char** argv) { return boxmf::cli::run(argc, argv, std::cout, std::cerr); }
