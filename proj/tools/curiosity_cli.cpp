#include "curiosity/cli.hpp"

int main(int argc, char** argv) { return curiosity::run_cli(argc, argv); }
