#pragma once
// Command-line front end: `evolve`, `check`, `rates` and `plot` subcommands.
// Exit codes: 0 success, 1 usage or input error, 2 breakdown / violated check.

#include <ostream>
#include <string>
#include <vector>

namespace curveflow::cli {

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main_entry(int argc, char** argv);

}  // namespace curveflow::cli
