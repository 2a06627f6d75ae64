#include "surfex/cli.hpp"

int main(int argc, char** argv) { return surfex::cli_main(argc, argv); }
