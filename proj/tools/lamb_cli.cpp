#include "lamb/cli.hpp"

int main(int argc, char** argv) { return lamb::cli::run(argc, argv); }
