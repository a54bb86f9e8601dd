#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qalam::cli {

/// Runs one `qalam` invocation. `args` excludes the program name.
/// Returns the process exit code: 0 on success, 1 on error, 2 when
/// build-db ingested some files but not all.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qalam::cli
