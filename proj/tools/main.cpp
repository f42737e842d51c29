#include "wfsim/cli.hpp"

int main(int argc, char** argv) { return wfsim::run_cli(argc, argv); }
