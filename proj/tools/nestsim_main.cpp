#include "nestsim/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return nestsim::cli::dispatch(args, std::cout, std::cerr);
}
