#include "qtheta/cli.hpp"

int main(int argc, char** argv)
{
    return qtheta::cli_dispatch(argc, argv);
}
