#pragma once

// Tabular sweep output. Missing values serialize as empty CSV fields.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cqm {

class SweepResult {
 public:
  using Row = std::vector<std::optional<double>>;

  SweepResult(std::string sweep_variable, std::vector<std::string> columns);

  const std::string& sweep_variable() const { return sweep_variable_; }
  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t size() const { return sweep_.size(); }

  void add_row(double sweep_value, Row values);
  // Stable sort by sweep value.
  void sort_rows();

  double sweep_value(std::size_t row) const { return sweep_.at(row); }
  std::optional<double> get(std::size_t row, std::string_view column) const;
  std::vector<std::optional<double>> column(std::string_view name) const;

  void set_metadata(std::string key, std::string value);
  const std::vector<std::pair<std::string, std::string>>& metadata() const { return metadata_; }

  void write_csv(std::ostream& os) const;
  // key,value lines.
  void write_summary_csv(std::ostream& os) const;

 private:
  std::size_t index_of(std::string_view column) const;

  std::string sweep_variable_;
  std::vector<std::string> columns_;
  std::vector<double> sweep_;
  std::vector<Row> rows_;
  std::vector<std::pair<std::string, std::string>> metadata_;
};

}  // namespace cqm
