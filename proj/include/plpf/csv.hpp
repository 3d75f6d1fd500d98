#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace plpf::csv {

/// Shortest round-trip decimal form; "nan"/"inf"/"-inf" for non-finite values.
std::string format(double v);
std::string format(long long v);

/// Writes '#'-prefixed comment lines, one per entry.
void write_comments(std::ostream& out, const std::vector<std::string>& lines);

void write_row(std::ostream& out, const std::vector<std::string>& cells);

}  // namespace plpf::csv
