#include "plpf/csv.hpp"

#include <charconv>
#include <cmath>

namespace plpf::csv {

std::string format(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string format(long long v) { return std::to_string(v); }

void write_comments(std::ostream& out, const std::vector<std::string>& lines) {
  for (const auto& line : lines) out << "# " << line << '\n';
}

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << '\n';
}

}  // namespace plpf::csv
