#include "scalefn/cli.hpp"

int main(int argc, char** argv) { return scalefn::run_cli(argc, argv); }
