#include "friclab/cli.hpp"

int main(int argc, char** argv) { return friclab::cli::dispatch(argc, argv); }
