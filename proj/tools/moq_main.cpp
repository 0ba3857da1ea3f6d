#include <iostream>

#include "moq/cli.hpp"

int main(int argc, char** argv) { return moq::run(argc, argv, std::cout, std::cerr); }
