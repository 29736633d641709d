// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "wimax/cli.hpp"

int main(int argc, char** argv) { return wimax::cli::main(argc, argv, std::cout, std::cerr); }
