#include <iostream>
#include <string>
#include <vector>

#include "spatialkit/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv, argv + argc);
    return spatialkit::cli::run(args, std::cout, std::cerr);
}
