#include <iostream>

#include "qexplain/cli.hpp"

int main(int argc, char** argv)
{
    return qexplain::cli::run({argv, argv + argc}, std::cout, std::cerr);
}
