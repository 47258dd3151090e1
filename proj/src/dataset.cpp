#include "ovb/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace ovb {

void Dataset::add_column(std::string name, std::vector<double> values) {
  if (name.empty()) fail(errc::invalid_spec, "column name must be non-empty");
  if (index_.count(name))
    fail(errc::invalid_spec, "duplicate column name '" + name + "'");
  if (values.empty())
    fail(errc::invalid_spec, "column '" + name + "' has no rows");
  if (!names_.empty() && values.size() != n_rows_)
    fail(errc::invalid_spec,
         "column '" + name + "' has " + std::to_string(values.size()) +
             " rows, expected " + std::to_string(n_rows_));
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]))
      fail(errc::invalid_spec, "column '" + name + "' has a non-finite entry at row " +
                                   std::to_string(i + 1));
  }
  if (names_.empty()) n_rows_ = values.size();
  index_.emplace(name, names_.size());
  names_.push_back(std::move(name));
  columns_.push_back(std::move(values));
}

bool Dataset::has_column(std::string_view name) const noexcept {
  return index_.find(std::string(name)) != index_.end();
}

const std::vector<double>& Dataset::column(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end())
    fail(errc::unknown_column, "no column named '" + std::string(name) + "'");
  return columns_[it->second];
}

bool Dataset::operator==(const Dataset& other) const noexcept {
  return names_ == other.names_ && columns_ == other.columns_;
}

void ModelSpec::validate(const Dataset& data) const {
  if (outcome.empty() || treatment.empty())
    fail(errc::invalid_spec, "outcome and treatment must be named");
  if (outcome == treatment)
    fail(errc::invalid_spec, "outcome and treatment must differ");
  std::unordered_set<std::string> seen;
  for (const auto& c : covariates) {
    if (c == outcome)
      fail(errc::invalid_spec, "outcome '" + outcome + "' listed as covariate");
    if (c == treatment)
      fail(errc::invalid_spec, "treatment '" + treatment + "' listed as covariate");
    if (!seen.insert(c).second)
      fail(errc::invalid_spec, "covariate '" + c + "' listed twice");
    if (!data.has_column(c))
      fail(errc::unknown_column, "no column named '" + c + "'");
  }
  if (!data.has_column(outcome))
    fail(errc::unknown_column, "no column named '" + outcome + "'");
  if (!data.has_column(treatment))
    fail(errc::unknown_column, "no column named '" + treatment + "'");
}

}  // namespace ovb
