#include <iostream>

#include "photon_gun/cli.hpp"

int main(int argc, char** argv)
{
    return photon_gun::cli::run_cli(argc, argv, std::cout, std::cerr);
}
