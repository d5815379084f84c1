#include "ortho/harness.hpp"

int main(int argc, char** argv) { return ortho::cli_main(argc, argv); }
