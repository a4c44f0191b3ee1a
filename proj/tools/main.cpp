#include "pvforms/cli.hpp"

int main(int argc, char **argv) { return pvforms::run_cli(argc, argv); }
