#include "qaw/cli.hpp"

int main(int argc, char** argv) { return qaw::cli::run(argc, argv); }
