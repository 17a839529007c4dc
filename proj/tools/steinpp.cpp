#include "steinpp/harness.hpp"

int main(int argc, char** argv) { return steinpp::run_cli(argc, argv); }
