#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace hqc::csv {

/// Shortest text that parses back to exactly the same double.
std::string format_double(double x);
double parse_double(std::string_view text);

/// Joins fields with commas; throws if a field contains a comma, quote or
/// line break (none of the emitted identifiers do).
std::string join(const std::vector<std::string>& fields);
std::vector<std::string> split(std::string_view line);

}  // namespace hqc::csv
