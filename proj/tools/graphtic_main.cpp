#include "graphtic/cli.hpp"

int main(int argc, char** argv) { return graphtic::run_cli(argc, argv); }
