#include "sharpmax/cli.hpp"

int main(int argc, char** argv) { return sharpmax::run_cli(argc, argv); }
