#include "illdist/error.hpp"

namespace illdist {

const char* errc_name(errc c) noexcept {
  switch (c) {
    case errc::coordinate_out_of_range: return "COORDINATE_OUT_OF_RANGE";
    case errc::empty_set: return "EMPTY_SET";
    case errc::invalid_parameter: return "INVALID_PARAMETER";
    case errc::generation_failed: return "GENERATION_FAILED";
    case errc::parse_error: return "PARSE_ERROR";
    case errc::header_mismatch: return "HEADER_MISMATCH";
    case errc::window_below_two: return "WINDOW_BELOW_TWO";
    case errc::empty_window: return "EMPTY_WINDOW";
    case errc::dimension_mismatch: return "DIMENSION_MISMATCH";
    case errc::zero_trials: return "ZERO_TRIALS";
    case errc::overdetermined: return "OVERDETERMINED";
    case errc::zero_polynomial: return "ZERO_POLYNOMIAL";
    case errc::search_space_too_large: return "SEARCH_SPACE_TOO_LARGE";
    case errc::iteration_budget_exceeded: return "ITERATION_BUDGET_EXCEEDED";
    case errc::internal_error: return "INTERNAL_ERROR";
    case errc::usage_error: return "USAGE_ERROR";
    case errc::config_parse_error: return "CONFIG_PARSE_ERROR";
    case errc::io_not_found: return "IO_NOT_FOUND";
    case errc::io_write_failed: return "IO_WRITE_FAILED";
  }
  return "UNKNOWN";
}

}  // namespace illdist
