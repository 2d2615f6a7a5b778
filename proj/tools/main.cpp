#include <iostream>

#include "erlq/cli.hpp"

int main(int argc, char** argv) {
    return erlq::run_cli(argc, argv, std::cout, std::cerr);
}
