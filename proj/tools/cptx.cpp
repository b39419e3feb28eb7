#include "cptx/cli/run.hpp"

#include <iostream>

int main(int argc, char** argv) { return cptx::cli::run(argc, argv, std::cout, std::cerr); }
