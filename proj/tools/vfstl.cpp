#include <iostream>

#include "vfstl/cli/commands.hpp"

int main(int argc, char** argv) { return vfstl::cli::run_cli(argc, argv, std::cout, std::cerr); }
