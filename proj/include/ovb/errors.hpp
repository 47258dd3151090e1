#pragma once

#include <stdexcept>
#include <string>

namespace ovb {

// Machine-checkable failure categories. The CLI maps these onto exit codes,
// tests match on them directly.
enum class errc {
  // dataset / model specification
  unknown_column,
  invalid_spec,
  insufficient_rows,
  rank_deficient,
  // partial R^2 machinery
  degenerate_conditioning,
  zero_variance_residual,
  denominator_degenerate,
  saturated,
  // sensitivity statistics
  invalid_confounder,
  degenerate_df,
  invalid_q,
  invalid_alpha,
  zero_treatment_association,
  invalid_correlation,
  // benchmarking
  zero_benchmark_association,
  saturated_model,
  saturated_benchmark,
  multiple_benchmark_covariates,
  // synthetic data / oracles
  regime_unreachable,
  bracket_failure,
  // ingestion and reporting
  io_error,
  parse_error,
  empty_dataset,
  invalid_grid,
  // generic argument violation
  invalid_input,
};

const char* errc_name(errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace ovb
