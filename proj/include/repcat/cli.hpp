#pragma once
/* Command line front end: category context flags, data file loading, DSL
 * parsing, and text or JSON reports for every verification suite. */

#include <ostream>
#include <string>
#include <vector>

namespace repcat {

// Dispatch one command line (program name excluded).  Reports go to `out`,
// errors to `err`.  Exit status: 0 when the command and every requested
// check passed, 1 when a check failed, 2 on usage, syntax, or data errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace repcat
