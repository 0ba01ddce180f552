#pragma once

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace spinbus::sweep {

using Cell = std::variant<double, std::string>;

/// %.17g, with inf/-inf/nan spelled out.
std::string format_number(double x);

/// Rectangular table: CSV rows under a single '#'-prefixed JSON metadata line.
class ResultTable {
 public:
  ResultTable(std::string name, std::vector<std::string> columns);

  const std::string& name() const noexcept { return name_; }
  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }
  nlohmann::json& metadata() noexcept { return metadata_; }
  const nlohmann::json& metadata() const noexcept { return metadata_; }

  /// Throws std::invalid_argument when the width does not match the schema.
  void add_row(std::vector<Cell> row);

  double number(std::size_t row, const std::string& column) const;
  std::size_t column_index(const std::string& column) const;

  std::string csv_body() const;
  std::string to_csv() const;

  /// Writes to `path` through a temporary sibling and a rename, so a failed
  /// run never leaves a partial file behind.
  void write(const std::string& path) const;

 private:
  std::string name_;
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
  nlohmann::json metadata_ = nlohmann::json::object();
};

}  // namespace spinbus::sweep
