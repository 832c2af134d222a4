#include "wavekit/app/cli.hpp"

int main(int argc, char** argv) { return wavekit::app::run(argc, argv); }
