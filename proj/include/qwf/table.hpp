#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace qwf {

/// Numeric table with named columns, written as CSV (17 significant digits,
/// '.' decimal, locale independent) or as a JSON mirror.
class Table {
public:
  explicit Table(std::vector<std::string> columns);

  void add_row(std::vector<double> row);
  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<double>>& rows() const noexcept { return rows_; }
  std::size_t column_index(const std::string& name) const;
  std::vector<double> column(const std::string& name) const;

  /// Comment lines start with '#': software version, schema version and the
  /// config echo (one line of compact JSON), then the header row.
  void write_csv(std::ostream& os, const nlohmann::json& config) const;
  nlohmann::json to_json(const nlohmann::json& config) const;

private:
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
};

/// 17 significant digits, locale independent.
std::string format_double(double x);

/// Envelope shared by every JSON output: version, schema, config echo.
nlohmann::json provenance(const nlohmann::json& config);

}  // namespace qwf
