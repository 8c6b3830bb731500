#include <iostream>

#include "hepbell/cli.hpp"

int main(int argc, char** argv) {
    return hepbell::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
