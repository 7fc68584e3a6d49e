#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return ellidiff::cli_main(argc, argv, std::cout, std::cerr);
}
