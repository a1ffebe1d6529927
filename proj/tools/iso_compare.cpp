#include "iso/cli/run.hpp"

int main(int argc, char** argv) { return iso::cli::main(argc, argv); }
