#pragma once

#include <stdexcept>
#include <string>

namespace mathrules {

enum class errc {
  illegal_name,
  illegal_decimal,
  division_by_zero,
  zero_to_negative_power,
  unbound_name,
  non_integer_exponent,
  parse_error,
  ambiguous_name,
  not_linear_in_target,
  target_absent,
  identically_zero_coefficient,
  leading_zero,
  term_absent,
  pattern_mismatch,
  singular_pivot,
  inconclusive_equivalence,
  empty_vocabulary,
  exhausted_retries,
  generation_retry_exceeded,
  degenerate_instance,
  empty_input,
  io_error,
  http_error,
  timeout,
  malformed_response,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::illegal_name: return "IllegalName";
    case errc::illegal_decimal: return "IllegalDecimal";
    case errc::division_by_zero: return "DivisionByZero";
    case errc::zero_to_negative_power: return "ZeroToNegativePower";
    case errc::unbound_name: return "UnboundName";
    case errc::non_integer_exponent: return "NonIntegerExponent";
    case errc::parse_error: return "ParseError";
    case errc::ambiguous_name: return "AmbiguousName";
    case errc::not_linear_in_target: return "NotLinearInTarget";
    case errc::target_absent: return "TargetAbsent";
    case errc::identically_zero_coefficient: return "IdenticallyZeroCoefficient";
    case errc::leading_zero: return "LeadingZero";
    case errc::term_absent: return "TermAbsent";
    case errc::pattern_mismatch: return "PatternMismatch";
    case errc::singular_pivot: return "SingularPivot";
    case errc::inconclusive_equivalence: return "InconclusiveEquivalence";
    case errc::empty_vocabulary: return "EmptyVocabulary";
    case errc::exhausted_retries: return "ExhaustedRetries";
    case errc::generation_retry_exceeded: return "GenerationRetryExceeded";
    case errc::degenerate_instance: return "DegenerateInstance";
    case errc::empty_input: return "EmptyInput";
    case errc::io_error: return "IoError";
    case errc::http_error: return "HttpError";
    case errc::timeout: return "Timeout";
    case errc::malformed_response: return "MalformedResponse";
  }
  return "UnknownError";
}

/// Library-wide exception; `code()` identifies the contract error.
class Error : public std::runtime_error {
 public:
  Error(errc code, std::string detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& detail) {
  throw Error(code, detail);
}

}  // namespace mathrules
