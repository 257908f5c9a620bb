#include "polytask/cli/commands.hpp"

int main(int argc, char** argv) { return polytask::cli::run(argc, argv); }
