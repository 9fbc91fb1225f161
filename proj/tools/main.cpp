#include "fsp/cli.hpp"

int main(int argc, char** argv) { return fsp::cli::run(argc, argv); }
