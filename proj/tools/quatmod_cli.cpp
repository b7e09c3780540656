#include "quatmod/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    quatmod::cli::CommandResult r = quatmod::cli::run(args);
    std::cout << r.envelope.dump(2) << '\n';
    return r.exit_code;
}
