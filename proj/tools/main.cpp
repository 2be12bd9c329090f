#include "tvalue/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return tvalue::run_cli(args, std::cout, std::cerr);
}
