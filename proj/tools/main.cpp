#include "condtest/cli.hpp"

int main(int argc, char** argv) { return condtest::run_cli(argc, argv); }
