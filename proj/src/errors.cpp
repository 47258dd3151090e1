#include "ovb/errors.hpp"

namespace ovb {

const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::unknown_column: return "UnknownColumn";
    case errc::invalid_spec: return "InvalidSpec";
    case errc::insufficient_rows: return "InsufficientRows";
    case errc::rank_deficient: return "RankDeficient";
    case errc::degenerate_conditioning: return "DegenerateConditioning";
    case errc::zero_variance_residual: return "ZeroVarianceResidual";
    case errc::denominator_degenerate: return "DenominatorDegenerate";
    case errc::saturated: return "Saturated";
    case errc::invalid_confounder: return "InvalidConfounder";
    case errc::degenerate_df: return "DegenerateDf";
    case errc::invalid_q: return "InvalidQ";
    case errc::invalid_alpha: return "InvalidAlpha";
    case errc::zero_treatment_association: return "ZeroTreatmentAssociation";
    case errc::invalid_correlation: return "InvalidCorrelation";
    case errc::zero_benchmark_association: return "ZeroBenchmarkAssociation";
    case errc::saturated_model: return "SaturatedModel";
    case errc::saturated_benchmark: return "SaturatedBenchmark";
    case errc::multiple_benchmark_covariates: return "MultipleBenchmarkCovariatesUnsupported";
    case errc::regime_unreachable: return "RegimeUnreachable";
    case errc::bracket_failure: return "BracketFailure";
    case errc::io_error: return "IoError";
    case errc::parse_error: return "ParseError";
    case errc::empty_dataset: return "EmptyDataset";
    case errc::invalid_grid: return "InvalidGrid";
    case errc::invalid_input: return "InvalidInput";
  }
  return "UnknownError";
}

}  // namespace ovb
