#include "madness/cli.hpp"

int main(int argc, char** argv) { return madness::cli::run_cli(argc, argv); }
