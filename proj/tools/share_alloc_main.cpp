#include "sharing/cli.hpp"

int main(int argc, char** argv) { return sharing::cli_main(argc, argv); }
