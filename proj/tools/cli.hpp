#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace switchcap::cli {

// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kBadArguments = 2,
  kIoError = 3,
  kSizeGuard = 4,
};

/// Parses "2,3,6", "2..6" or a mix like "1..3,8". Throws std::invalid_argument.
std::vector<std::size_t> parse_index_list(std::string_view text);

/// Parses "0,1,2;1,0,2" into permutations. Throws std::invalid_argument.
std::vector<std::vector<std::size_t>> parse_order_list(std::string_view text);

/// Up to `points` integers log-spaced over [lo, hi], deduplicated, ascending.
std::vector<std::size_t> log_spaced(std::size_t lo, std::size_t hi, std::size_t points);

/// Runs the tool; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace switchcap::cli
