#include <iostream>
#include <string>
#include <vector>

#include "cycfact/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cycfact::run_cli(std::move(args), std::cout, std::cerr);
}
