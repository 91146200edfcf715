#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dbx {

// Full command-line entry point; returns the process exit code.
// 0 success, 1 precondition violation, 2 numeric failure, 64 usage error,
// 78 configuration error. Payloads go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace dbx
