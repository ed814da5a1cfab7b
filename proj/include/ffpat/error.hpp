#pragma once

#include <stdexcept>
#include <string>

namespace ffpat {

enum class Errc {
  NotPrime,
  FieldTooLarge,
  DivideByZero,
  ZeroPolynomial,
  ParseError,
  PoleAt,
  QuadratureNonConvergence,
  NonPositiveResult,
  AlphaNotCoprime,
  DegenerateR,
  InvalidInput,
  DependentForms,
  BudgetExceeded,
  DegenerateShifts,
  NotAdmissible,
  ZeroModulus,
  CorruptCache,
  VersionMismatch,
  FieldMismatch,
  ConfigError,
};

const char* to_string(Errc code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace ffpat
