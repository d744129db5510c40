#include "nerlab/cli.hpp"

int main(int argc, char** argv) { return nerlab::cli::run(argc, argv); }
