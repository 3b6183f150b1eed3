#include "solq/cli/cli.hpp"

int main(int argc, char** argv) { return solq::cli::run_main(argc, argv); }
