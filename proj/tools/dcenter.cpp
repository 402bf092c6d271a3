#include "dcenter/cli.hpp"

int main(int argc, char** argv) { return dcenter::cli::run(argc, argv); }
