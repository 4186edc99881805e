#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tcdp {

// Every failure the library reports. The CLI maps these onto exit codes:
// data/privacy constraints that cannot be met -> 1, usage and I/O -> 2.
enum class errc {
  schema_mismatch,
  cell_violation,
  empty_dataset,
  unknown_label,
  empty_input,
  alphabet_mismatch,
  alphabet_too_large,
  grid_mismatch,
  not_normalized,
  bad_threshold,
  no_confidential,
  non_numeric_column,
  too_small,
  non_integer_t,
  bad_l,
  infeasible,
  unknown_strategy,
  k_too_large,
  sizes_mismatch,
  bad_t,
  bad_epsilon,
  missing_bounds,
  not_t_close,
  bad_spec,
  io_error,
};

inline std::string_view to_string(errc c) {
  switch (c) {
    case errc::schema_mismatch: return "SchemaMismatch";
    case errc::cell_violation: return "CellViolation";
    case errc::empty_dataset: return "EmptyDataset";
    case errc::unknown_label: return "UnknownLabel";
    case errc::empty_input: return "EmptyInput";
    case errc::alphabet_mismatch: return "AlphabetMismatch";
    case errc::alphabet_too_large: return "AlphabetTooLarge";
    case errc::grid_mismatch: return "GridMismatch";
    case errc::not_normalized: return "NotNormalized";
    case errc::bad_threshold: return "BadThreshold";
    case errc::no_confidential: return "NoConfidential";
    case errc::non_numeric_column: return "NonNumericColumn";
    case errc::too_small: return "TooSmall";
    case errc::non_integer_t: return "NonIntegerT";
    case errc::bad_l: return "BadL";
    case errc::infeasible: return "Infeasible";
    case errc::unknown_strategy: return "UnknownStrategy";
    case errc::k_too_large: return "KTooLarge";
    case errc::sizes_mismatch: return "SizesMismatch";
    case errc::bad_t: return "BadT";
    case errc::bad_epsilon: return "BadEpsilon";
    case errc::missing_bounds: return "MissingBounds";
    case errc::not_t_close: return "NotTClose";
    case errc::bad_spec: return "BadSpec";
    case errc::io_error: return "IoError";
  }
  return "UnknownError";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace tcdp
