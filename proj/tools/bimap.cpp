#include "bimap/cli.hpp"

int main(int argc, char** argv) { return bimap::cli::run_cli(argc, argv); }
