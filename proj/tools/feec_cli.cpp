#include "feec/cli.hpp"

int main(int argc, char** argv) { return feec::cli::run(argc, argv); }
