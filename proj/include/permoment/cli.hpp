#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace permoment::cli {

/// Runs one CLI invocation. Returns the process exit code: 0 on success,
/// 1 on computation errors, 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

} // namespace permoment::cli
