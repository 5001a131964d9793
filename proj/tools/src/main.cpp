#include "percolate/cli/app.hpp"

int main(int argc, char** argv) { return percolate::cli::run_cli(argc, argv); }
