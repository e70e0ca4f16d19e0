#include <string>
#include <vector>

#include "steklov/cli.hpp"

int main(int argc, char** argv) {
    return steklov::run_command(std::vector<std::string>(argv + 1, argv + argc));
}
