#include "lmps/cli.hpp"

int main(int argc, char** argv) { return lmps::cli_main(argc, argv); }
