#pragma once

// Command-line front end: solve | classify | sweep | verify.
//
// Exit codes: 0 ok, 1 verification failures, 2 parse error, 3 parameter out
// of range (or exact root not rational), 4 regime / hypothesis violation,
// 5 numeric pole. Results go to `out`; diagnostics and error records to `err`.

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "qh/cli/verify.hpp"

namespace qh::cli {

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses a flat "key = value" config file ('#' starts a comment).
/// Throws ErrorKind::Parse on malformed lines or unknown keys.
std::map<std::string, std::string> parse_config(const std::string& text);

}  // namespace qh::cli
