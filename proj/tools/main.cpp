#include "substefan/cli.hpp"

int main(int argc, char** argv) { return substefan::cli::run_cli(argc, argv); }
