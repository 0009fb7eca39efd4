#include "cli.hpp"

int main(int argc, char** argv) { return chaoslab::cli::parse_and_dispatch(argc, argv); }
