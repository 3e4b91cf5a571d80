#include "shiftdep/cli.hpp"

int main(int argc, char** argv) { return shiftdep::cli::run(argc, argv); }
