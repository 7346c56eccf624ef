#pragma once

// The magball command line. run_cli is the whole program minus main(), so
// tests can drive it in-process.

#include <iosfwd>
#include <string>
#include <vector>

namespace magball::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { ok = 0, refuted = 1, usage = 2, disagreement = 3 };

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a, lower-case hex.
std::string fnv1a_hex(const std::string& data);

}  // namespace magball::cli
