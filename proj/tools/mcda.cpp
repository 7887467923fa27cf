#include "mcda/cli.hpp"

int main(int argc, char** argv) { return mcda::cli::main_entry(argc, argv); }
