#include "curveflow/cli.hpp"

int main(int argc, char** argv) { return curveflow::cli::main_entry(argc, argv); }
