#include "quenchbat/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "quenchbat/errors.hpp"

namespace quenchbat::csv {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw Error("number formatting failed");
  return std::string(buf, end);
}

std::string two_columns(const std::string& x_name, const std::string& y_name,
                        const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw Error("csv columns must match in length");
  std::string out;
  out.reserve(32 + 32 * x.size());
  out += x_name;
  out += ',';
  out += y_name;
  out += '\n';
  for (std::size_t i = 0; i < x.size(); ++i) {
    out += format_double(x[i]);
    out += ',';
    out += format_double(y[i]);
    out += '\n';
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw Error("write to '" + path + "' failed");
}

}  // namespace quenchbat::csv
