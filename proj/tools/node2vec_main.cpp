#include "node2vec/cli.hpp"

int main(int argc, char** argv) { return n2v::cli::run(argc, argv); }
