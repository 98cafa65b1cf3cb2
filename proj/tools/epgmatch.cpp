#include <string>
#include <vector>

#include "epgmatch/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return epgmatch::run_cli(args);
}
