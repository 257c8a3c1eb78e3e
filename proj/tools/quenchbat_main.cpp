#include "quenchbat/cli.hpp"

int main(int argc, char** argv) { return quenchbat::cli::cli_main(argc, argv); }
