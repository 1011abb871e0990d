#include "conecalc/cli.hpp"

int main(int argc, char** argv) { return conecalc::run_cli(argc, argv); }
