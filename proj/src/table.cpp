#include "qwf/table.hpp"

#include <charconv>
#include <cmath>

#include "qwf/error.hpp"
#include "qwf/version.hpp"

namespace qwf {

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw Error(ErrorKind::InvalidParams, "table needs at least one column");
}

void Table::add_row(std::vector<double> row) {
  if (row.size() != columns_.size()) {
    throw Error(ErrorKind::InvalidParams, "row has " + std::to_string(row.size()) +
                                              " entries, expected " + std::to_string(columns_.size()));
  }
  rows_.push_back(std::move(row));
}

std::size_t Table::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i] == name) return i;
  }
  throw Error(ErrorKind::InvalidParams, "no column named " + name);
}

std::vector<double> Table::column(const std::string& name) const {
  const std::size_t j = column_index(name);
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(r[j]);
  return out;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

nlohmann::json provenance(const nlohmann::json& config) {
  return {{"software", "qwf"}, {"version", kVersion}, {"schema_version", kSchemaVersion},
          {"config", config}};
}

void Table::write_csv(std::ostream& os, const nlohmann::json& config) const {
  os << "# qwf " << kVersion << " schema " << kSchemaVersion << '\n';
  os << "# config " << config.dump() << '\n';
  for (std::size_t j = 0; j < columns_.size(); ++j) os << (j ? "," : "") << columns_[j];
  os << '\n';
  for (const auto& r : rows_) {
    for (std::size_t j = 0; j < r.size(); ++j) os << (j ? "," : "") << format_double(r[j]);
    os << '\n';
  }
}

nlohmann::json Table::to_json(const nlohmann::json& config) const {
  nlohmann::json j = provenance(config);
  j["columns"] = columns_;
  j["rows"] = rows_;
  return j;
}

}  // namespace qwf
