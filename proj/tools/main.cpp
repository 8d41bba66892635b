#include "cli.hpp"

#include <iostream>

auto main(int argc, char ** argv) -> int
{
    return qhd::cli::run({argv, argv + argc}, std::cout, std::cerr);
}
