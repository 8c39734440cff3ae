#include "cli.hpp"

int main(int argc, char** argv) { return covsel::cli::main_entry(argc, argv); }
