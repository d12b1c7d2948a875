#include <iostream>

#include "arcsolve/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return arcsolve::cli::run(args, std::cout, std::cerr);
}
