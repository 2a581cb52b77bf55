#include <iostream>

#include "torq/cli.hpp"

int main(int argc, char** argv) { return torq::run_cli(argc, argv, std::cout, std::cerr); }
