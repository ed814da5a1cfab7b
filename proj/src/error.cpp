#include "ffpat/error.hpp"

namespace ffpat {

const char* to_string(Errc code) {
  switch (code) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::FieldTooLarge: return "FieldTooLarge";
    case Errc::DivideByZero: return "DivideByZero";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::ParseError: return "ParseError";
    case Errc::PoleAt: return "PoleAt";
    case Errc::QuadratureNonConvergence: return "QuadratureNonConvergence";
    case Errc::NonPositiveResult: return "NonPositiveResult";
    case Errc::AlphaNotCoprime: return "AlphaNotCoprime";
    case Errc::DegenerateR: return "DegenerateR";
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::DependentForms: return "DependentForms";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::DegenerateShifts: return "DegenerateShifts";
    case Errc::NotAdmissible: return "NotAdmissible";
    case Errc::ZeroModulus: return "ZeroModulus";
    case Errc::CorruptCache: return "CorruptCache";
    case Errc::VersionMismatch: return "VersionMismatch";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace ffpat
