#include "cqm/sweep_result.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "cqm/csv.hpp"
#include "cqm/errors.hpp"

namespace cqm {

SweepResult::SweepResult(std::string sweep_variable, std::vector<std::string> columns)
    : sweep_variable_(std::move(sweep_variable)), columns_(std::move(columns)) {}

void SweepResult::add_row(double sweep_value, Row values) {
  if (values.size() != columns_.size()) throw DimensionError("SweepResult: row width differs from column count");
  for (auto& v : values) {
    // NaN never reaches the file; it becomes an empty field.
    if (v && !std::isfinite(*v)) v.reset();
  }
  sweep_.push_back(sweep_value);
  rows_.push_back(std::move(values));
}

void SweepResult::sort_rows() {
  std::vector<std::size_t> order(sweep_.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sweep_[a] < sweep_[b]; });
  std::vector<double> sweep;
  std::vector<Row> rows;
  for (std::size_t i : order) {
    sweep.push_back(sweep_[i]);
    rows.push_back(std::move(rows_[i]));
  }
  sweep_ = std::move(sweep);
  rows_ = std::move(rows);
}

std::size_t SweepResult::index_of(std::string_view column) const {
  const auto it = std::find(columns_.begin(), columns_.end(), column);
  if (it == columns_.end()) throw DomainError("SweepResult: no column '" + std::string(column) + "'");
  return static_cast<std::size_t>(it - columns_.begin());
}

std::optional<double> SweepResult::get(std::size_t row, std::string_view column) const {
  return rows_.at(row).at(index_of(column));
}

std::vector<std::optional<double>> SweepResult::column(std::string_view name) const {
  const std::size_t k = index_of(name);
  std::vector<std::optional<double>> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(r[k]);
  return out;
}

void SweepResult::set_metadata(std::string key, std::string value) {
  for (auto& kv : metadata_) {
    if (kv.first == key) {
      kv.second = std::move(value);
      return;
    }
  }
  metadata_.emplace_back(std::move(key), std::move(value));
}

void SweepResult::write_csv(std::ostream& os) const {
  os << sweep_variable_;
  for (const auto& c : columns_) os << ',' << c;
  os << '\n';
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    os << csv::format_number(sweep_[i]);
    for (const auto& v : rows_[i]) os << ',' << csv::format_field(v);
    os << '\n';
  }
}

void SweepResult::write_summary_csv(std::ostream& os) const {
  os << "key,value\n";
  for (const auto& [k, v] : metadata_) os << k << ',' << v << '\n';
}

}  // namespace cqm
