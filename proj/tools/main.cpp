#include "ushuf/cli.hpp"

int main(int argc, char** argv) { return ushuf::cli::run(argc, argv); }
