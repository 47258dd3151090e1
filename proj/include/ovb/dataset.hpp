#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ovb/errors.hpp"

namespace ovb {

// A column-oriented table of named numeric series. All columns share the
// same length, names are unique and non-empty, and every entry is finite;
// these invariants are enforced at insertion so downstream code never
// re-validates.
class Dataset {
 public:
  Dataset() = default;

  // Appends a column. The first column fixes the row count.
  void add_column(std::string name, std::vector<double> values);

  std::size_t n_rows() const noexcept { return n_rows_; }
  std::size_t n_cols() const noexcept { return names_.size(); }
  bool empty() const noexcept { return names_.empty(); }

  bool has_column(std::string_view name) const noexcept;
  const std::vector<double>& column(std::string_view name) const;

  // Column names in insertion order.
  const std::vector<std::string>& column_names() const noexcept { return names_; }

  bool operator==(const Dataset& other) const noexcept;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<double>> columns_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t n_rows_ = 0;
};

// Regression structure: outcome ~ treatment + covariates (+ intercept).
struct ModelSpec {
  std::string outcome;
  std::string treatment;
  std::vector<std::string> covariates;
  bool intercept = true;

  // Throws invalid_spec / unknown_column when the structure is malformed
  // or references columns absent from `data`.
  void validate(const Dataset& data) const;
};

}  // namespace ovb
