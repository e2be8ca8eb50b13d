#include "cli.hpp"

int main(int argc, char** argv) { return openrcd::cli::run_cli(argc, argv); }
