#include <iostream>
#include <string>
#include <vector>

#include "ffcount/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ffcount::cli::run(std::move(args), std::cout, std::cerr);
}
