#include "logmean/table.hpp"

#include <charconv>
#include <stdexcept>

namespace logmean {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw std::runtime_error("format_double: to_chars failed");
  return std::string(buf, ptr);
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

std::string cell_to_string(const Cell& c) {
  if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
  if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
  return std::get<std::string>(c);
}

}  // namespace

std::string table_to_csv(const Table& t) {
  std::string out;
  for (size_t j = 0; j < t.columns.size(); ++j) {
    if (j) out += ',';
    out += csv_escape(t.columns[j]);
  }
  out += '\n';
  for (const auto& row : t.rows) {
    if (row.size() != t.columns.size()) throw std::invalid_argument("table_to_csv: ragged row");
    for (size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      out += csv_escape(cell_to_string(row[j]));
    }
    out += '\n';
  }
  return out;
}

nlohmann::json table_to_json(const Table& t, nlohmann::json meta) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : t.rows) {
    if (row.size() != t.columns.size()) throw std::invalid_argument("table_to_json: ragged row");
    nlohmann::json obj = nlohmann::json::object();
    for (size_t j = 0; j < row.size(); ++j) {
      const Cell& c = row[j];
      if (std::holds_alternative<double>(c)) obj[t.columns[j]] = std::get<double>(c);
      else if (std::holds_alternative<long long>(c)) obj[t.columns[j]] = std::get<long long>(c);
      else obj[t.columns[j]] = std::get<std::string>(c);
    }
    rows.push_back(std::move(obj));
  }
  return nlohmann::json{{"meta", std::move(meta)}, {"rows", std::move(rows)}};
}

uint64_t fnv1a64(const void* data, size_t n, uint64_t h) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

uint64_t fnv1a64(std::string_view s) { return fnv1a64(s.data(), s.size()); }

}  // namespace logmean
