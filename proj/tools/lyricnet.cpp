#include <iostream>

#include "lyricnet/cli/commands.hpp"

int main(int argc, char** argv) { return lyricnet::cli::run(argc, argv, std::cout, std::cerr); }
