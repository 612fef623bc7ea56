#include <iostream>

#include "qh/cli/app.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return qh::cli::run_cli(args, std::cout, std::cerr);
}
