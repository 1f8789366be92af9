#include "catstate/cli.hpp"

int main(int argc, char** argv) { return catstate::cli_main(argc, argv); }
