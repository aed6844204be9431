#include <string>
#include <vector>

#include <lemon/cli.hpp>

int main(int argc, char** argv) {
    return lemon::cli::main(std::vector<std::string>(argv, argv + argc));
}
