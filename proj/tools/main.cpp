#include "cauchy/cli.hpp"

int main(int argc, char** argv) { return cauchy::run_cli(argc, argv); }
