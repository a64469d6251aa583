#include "cli.hpp"

int main(int argc, char** argv) { return amar::cli::run(argc, argv); }
