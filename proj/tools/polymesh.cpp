#include <iostream>

#include "polymesh/cli.hpp"

int main(int argc, char** argv)
{
    return polymesh::run_cli(argc, argv, std::cout, std::cerr);
}
