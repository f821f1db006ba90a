#include "edgemarket/harness/run.hpp"

int main(int argc, char** argv) { return edgemarket::harness::run_main(argc, argv); }
