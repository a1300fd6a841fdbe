#include <iostream>

#include "besselcert/cli.hpp"

int main(int argc, char** argv) { return besselcert::run_cli(argc, argv, std::cout, std::cerr); }
