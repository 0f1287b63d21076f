#include "uavjam/cli.hpp"

int main(int argc, char** argv) { return uavjam::cli::run(argc, argv); }
