#include "chord/table.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace chord::cli {

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) throw std::logic_error("row width does not match the header");
  rows_.push_back(std::move(row));
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, x);
  if (ec != std::errc{}) throw std::runtime_error("cannot format real");
  return std::string(buffer, end);
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

namespace {

struct CsvText {
  std::string operator()(Null) const { return ""; }
  std::string operator()(std::int64_t v) const { return std::to_string(v); }
  std::string operator()(const BigInt& v) const { return to_decimal(v); }
  std::string operator()(double v) const { return format_real(v); }
  std::string operator()(const std::string& v) const { return csv_field(v); }
  std::string operator()(bool v) const { return v ? "true" : "false"; }
};

struct JsonValue {
  nlohmann::ordered_json operator()(Null) const { return nullptr; }
  nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
  nlohmann::ordered_json operator()(const BigInt& v) const { return to_decimal(v); }
  nlohmann::ordered_json operator()(double v) const {
    if (!std::isfinite(v)) return nullptr;
    return v;
  }
  nlohmann::ordered_json operator()(const std::string& v) const { return v; }
  nlohmann::ordered_json operator()(bool v) const { return v; }
};

}  // namespace

void Table::write_csv(std::ostream& os) const {
  for (std::size_t c = 0; c < columns_.size(); ++c) os << (c ? "," : "") << csv_field(columns_[c]);
  os << "\r\n";
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << std::visit(CsvText{}, row[c]);
    os << "\r\n";
  }
}

nlohmann::ordered_json Table::to_json() const {
  auto data = nlohmann::ordered_json::array();
  for (const auto& row : rows_) {
    nlohmann::ordered_json object = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) object[columns_[c]] = std::visit(JsonValue{}, row[c]);
    data.push_back(std::move(object));
  }
  return data;
}

}  // namespace chord::cli
