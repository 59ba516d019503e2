#include "fracperi/cli.hpp"

int main(int argc, char** argv) { return fracperi::run(argc, argv); }
