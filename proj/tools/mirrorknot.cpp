#include <iostream>

#include <mirrorknot/cli.hpp>

int main(int argc, char **argv)
{
    return mirrorknot::cli::run(argc, argv, std::cout, std::cerr);
}
