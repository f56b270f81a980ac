#include "snncost/cli.hpp"

int main(int argc, char** argv) {
    return snncost::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
