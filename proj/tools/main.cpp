#include "blinkbench/cli.hpp"

int main(int argc, char** argv) {
    return blinkbench::run_cli(argc, argv);
}
