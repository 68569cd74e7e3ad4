#include "pparab/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return pparab::cli::main(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
