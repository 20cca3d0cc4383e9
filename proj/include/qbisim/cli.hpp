#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qbisim {

// Runs one command line (without the program name). Returns 0 for yes/valid,
// 1 for no/invalid and 2 for errors; the report goes to `out`, diagnostics to
// `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qbisim
