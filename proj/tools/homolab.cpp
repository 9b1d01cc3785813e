#include <homolab/cli.hpp>

int main(int argc, char** argv) { return homolab::runCli(argc, argv); }
