#pragma once

#include "chord/bigint.hpp"

#include <cstdint>
#include <json.hpp>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace chord::cli {

struct Null {};

/// One output value. Big integers stay in full decimal in both formats (JSON
/// strings), reals use the shortest round-trip representation.
using Cell = std::variant<Null, std::int64_t, BigInt, double, std::string, bool>;

class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_row(std::vector<Cell> row);

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }

  /// RFC 4180 style: header row, comma separated, quoted only when needed.
  void write_csv(std::ostream& os) const;
  nlohmann::ordered_json to_json() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

std::string format_real(double x);
std::string csv_field(const std::string& text);

}  // namespace chord::cli
