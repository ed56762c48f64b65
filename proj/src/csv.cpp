#include "hqc/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

#include "hqc/errors.hpp"

namespace hqc::csv {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) {
    throw Error("failed to format double");
  }
  return std::string(buf, end);
}

double parse_double(std::string_view text) {
  const std::string s(text);
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw PreconditionError("not a number: '" + s + "'");
  }
  return x;
}

std::string join(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (fields[i].find_first_of(",\"\n\r") != std::string::npos) {
      throw PreconditionError("CSV field needs quoting: " + fields[i]);
    }
    if (i > 0) out += ',';
    out += fields[i];
  }
  return out;
}

std::vector<std::string> split(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.emplace_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace hqc::csv
