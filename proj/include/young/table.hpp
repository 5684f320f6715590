#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace young {

using Cell = std::variant<std::int64_t, double, std::string>;

/// A header plus rows; the unit every command emits.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

/// Floats are written with 9 significant digits.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

inline std::string cell_text(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  return std::get<std::string>(c);
}

/// Comma-separated, LF line endings, header row always present.
inline std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t k = 0; k < t.header.size(); ++k) {
    if (k) out += ',';
    out += csv_field(t.header[k]);
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out += ',';
      out += csv_field(cell_text(row[k]));
    }
    out += '\n';
  }
  return out;
}

/// Array of row objects keyed by the header. Floats carry the same 9 digits
/// as the CSV form; non-finite values become null.
inline std::string to_json(const Table& t) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t k = 0; k < row.size() && k < t.header.size(); ++k) {
      const auto& c = row[k];
      if (const auto* i = std::get_if<std::int64_t>(&c)) {
        obj[t.header[k]] = *i;
      } else if (const auto* d = std::get_if<double>(&c)) {
        if (std::isfinite(*d)) {
          obj[t.header[k]] = std::strtod(format_double(*d).c_str(), nullptr);
        } else {
          obj[t.header[k]] = nullptr;
        }
      } else {
        obj[t.header[k]] = std::get<std::string>(c);
      }
    }
    rows.push_back(std::move(obj));
  }
  return rows.dump(2) + "\n";
}

}  // namespace young
