#include <iostream>

#include "sckn/cli.hpp"

int main(int argc, char** argv) {
    return sckn::cli::run(argc, argv, std::cout, std::cerr);
}
