#include "sphere_re/cli.hpp"

int main(int argc, char** argv) { return sphere_re::cli::main(argc, argv); }
