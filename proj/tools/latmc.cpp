#include <iostream>

#include "latmc/cli/commands.hpp"

int main(int argc, char** argv) { return latmc::cli::run_main(argc, argv, std::cout, std::cerr); }
