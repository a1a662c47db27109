#include "epidyn/cli.hpp"

int main(int argc, char** argv)
{
    return epidyn::run_cli(argc, argv);
}
