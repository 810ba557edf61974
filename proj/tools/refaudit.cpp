#include "refaudit/cli.hpp"

int main(int argc, char** argv) { return refaudit::cli::run(argc, argv); }
