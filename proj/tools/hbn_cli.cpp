#include "hbn/cli.hpp"

int main(int argc, char** argv) { return hbn::cli::main_entry(argc, argv); }
