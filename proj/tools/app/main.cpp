#include <iostream>

#include "isospec_cli/commands.hpp"

int main(int argc, char** argv) {
    return isospec::cli::run_cli(argc, argv, std::cout, std::cerr);
}
