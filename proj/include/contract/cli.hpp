#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace contract::cli {

enum ExitCode { kContractible = 0, kNotContractible = 1, kInputError = 2, kInconclusive = 3 };

// args excludes the program name. Data goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace contract::cli
