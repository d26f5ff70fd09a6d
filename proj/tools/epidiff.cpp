#include "epidiff/cli.hpp"

int main(int argc, char** argv)
{
    return epidiff::cli_main(argc, argv);
}
