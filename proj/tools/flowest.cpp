#include <iostream>

#include "flowest/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return flowest::cli::run(args, std::cout, std::cerr);
}
