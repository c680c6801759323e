#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hvlab {

enum class Errc {
  NonPrimeCharacteristic,
  SizeBudgetExceeded,
  DivisionByZero,
  FieldMismatch,
  OddExtension,
  EmptyInput,
  DimensionMismatch,
  ContainmentViolated,
  ArityMismatch,
  ZeroPolynomial,
  NotHermitian,
  PointNotOnVariety,
  DegenerateForm,
  TrichotomyViolated,
  NotAQuadric,
  InsufficientNonTangent,
  InsufficientPlanes,
  VertexOnBase,
  BaseCurveSearchFailed,
  ConstructionNotFound,
  PointNotOnSurface,
  BudgetExceeded,
  InvalidArgument,
  ParseError,
};

std::string_view errc_name(Errc code) noexcept;

/// All library failures are reported through this exception; `code()` names
/// the failure class so callers (the CLI in particular) can map it to an
/// exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace hvlab
