#include "hqa/cli.hpp"

int main(int argc, char** argv) { return hqa::run_cli(argc, argv); }
