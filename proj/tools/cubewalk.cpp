#include "cubewalk/cli.hpp"

int main(int argc, char** argv) { return cubewalk::run_cli(argc, argv); }
