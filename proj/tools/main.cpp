#include "cli.hpp"

int main(int argc, char** argv) { return pearl::cli::main_with_args(argc, argv); }
