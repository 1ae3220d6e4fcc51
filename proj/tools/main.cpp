#include "cli.hpp"

int main(int argc, char** argv) { return dspwb::cli::run(argc, argv); }
