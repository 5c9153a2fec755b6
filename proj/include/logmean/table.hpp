// Column/row table with CSV and JSON writers shared by the report and CLI
// outputs.  Floats are serialized with shortest round-trip formatting so that
// identical runs produce byte-identical files.
#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace logmean {

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

// shortest decimal string that parses back to exactly the same double
std::string format_double(double v);

// RFC-4180-style: header row, comma-separated, LF line endings, UTF-8.
std::string table_to_csv(const Table& t);

// {"meta": meta, "rows": [{column: value, ...}, ...]}
nlohmann::json table_to_json(const Table& t, nlohmann::json meta);

uint64_t fnv1a64(std::string_view s);
uint64_t fnv1a64(const void* data, size_t n, uint64_t h = 14695981039346656037ull);

}  // namespace logmean
