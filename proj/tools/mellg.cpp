#include "mellg/cli.hpp"

int main(int argc, char** argv) { return mellg::cli_main(argc, argv); }
