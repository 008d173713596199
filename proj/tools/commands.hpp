#pragma once

#include "config.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace ghcli {

// Each command writes into `out` (created if missing) and returns a process exit code.
// Progress and warnings go to `log`.
int cmd_simulate(const RunConfig& c, const std::filesystem::path& out, std::ostream& log);
int cmd_marginal_test(const RunConfig& c, const std::filesystem::path& out, std::ostream& log);
int cmd_diagnostics(const RunConfig& c, const std::filesystem::path& out, std::ostream& log);

// RFC-4180 field: quoted when it contains a comma, quote, CR or LF.
std::string csv_field(const std::string& s);
// Shortest round-trip decimal form with '.' as separator.
std::string csv_number(double v);
double round_sig(double v, int digits);

}  // namespace ghcli
