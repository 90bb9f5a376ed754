#include "latcount/cli.hpp"

int main(int argc, char** argv) { return latcount::cli::main(argc, argv); }
