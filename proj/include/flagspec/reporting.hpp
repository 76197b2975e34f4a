#pragma once

#include "flagspec/exact.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace flagspec {

/// Fixed 15 significant digits.
std::string decimal(double value);

/// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

/// One CSV line; fields containing separators or quotes are quoted.
std::string csv_line(const std::vector<std::string>& fields);

/// Comma-separated integers, e.g. "2,3,5". Throws DomainError on malformed input.
std::vector<long> parse_int_list(std::string_view text);

}  // namespace flagspec
