#ifndef ILLDIST_ERROR_HPP
#define ILLDIST_ERROR_HPP

#include <stdexcept>
#include <string>

namespace illdist {

// Stable error codes surfaced by the CLI (exit 1 for domain errors, 2 for
// usage errors). The string form never changes once released.
enum class errc {
  coordinate_out_of_range,
  empty_set,
  invalid_parameter,
  generation_failed,
  parse_error,
  header_mismatch,
  window_below_two,
  empty_window,
  dimension_mismatch,
  zero_trials,
  overdetermined,
  zero_polynomial,
  search_space_too_large,
  iteration_budget_exceeded,
  internal_error,
  usage_error,
  config_parse_error,
  io_not_found,
  io_write_failed,
};

const char* errc_name(errc c) noexcept;

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  errc code() const noexcept { return code_; }
  const char* code_name() const noexcept { return errc_name(code_); }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) {
  throw error(code, what);
}

inline void require(bool cond, errc code, const std::string& what) {
  if (!cond) raise(code, what);
}

}  // namespace illdist

#endif
