#include <iostream>

#include "coedge/cli.hpp"

int main(int argc, char** argv) { return coedge::parse_and_dispatch(argc, argv, std::cout, std::cerr); }
