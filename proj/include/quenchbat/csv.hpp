#pragma once

#include <string>
#include <vector>

namespace quenchbat::csv {

// Shortest round-trip decimal form of a double (to_chars); "inf"/"-inf"
// for infinities.
std::string format_double(double value);

// Two-column CSV with header "x_name,y_name"; rows in input order,
// LF line endings, trailing newline.
std::string two_columns(const std::string& x_name, const std::string& y_name,
                        const std::vector<double>& x, const std::vector<double>& y);

void write_file(const std::string& path, const std::string& content);

}  // namespace quenchbat::csv
