#include "mert/cli.hpp"

int main(int argc, char** argv) {
    return mert::run(argc, argv);
}
