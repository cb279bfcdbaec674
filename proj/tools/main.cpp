#include "orlicz_lab/scenarios.hpp"

int main(int argc, char** argv) { return orlicz_lab::cli_main(argc, argv); }
