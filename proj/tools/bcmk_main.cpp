#include <iostream>
#include <string>
#include <vector>

#include "bcmk/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return bcmk::run_cli(args, std::cout, std::cerr);
}
