#include "gsf/cli.hpp"

int main(int argc, char** argv) { return gsf::dispatch(argc, argv); }
