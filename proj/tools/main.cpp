#include "stirap/cli.hpp"

int main(int argc, char** argv) { return stirap::run_cli(argc, argv); }
