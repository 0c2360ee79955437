#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace frobsurf {

enum class Errc {
  NotPrime,
  DegreeTooLarge,
  DivisionByZero,
  FieldMismatch,
  NotAnExtension,
  NoCompatibleRoot,
  SyntaxError,
  NotHomogeneous,
  UnknownVariable,
  BadFieldLiteral,
  ZeroDivisor,
  BudgetExceeded,
  PointNotOnVariety,
  SingularPoint,
  DimensionMismatch,
  NoTransverseCoordinate,
  TruncationTooSmall,
  RankDeficient,
  DegenerateCurve,
  NoSmoothPointFound,
  AllCandidatesVanish,
  InconsistentProfile,
  TooFewPoints,
  IrreducibilityNotAsserted,
  FrobeniusNonClassical,
  HypothesisNotMet,
  BadDegree,
  NonIntegerResult,
  IoError,
  Usage,
};

std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  /// With a 0-based offset into the text being parsed.
  Error(Errc code, const std::string& what, std::size_t position)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code), position_(position) {}

  Errc code() const noexcept { return code_; }
  std::optional<std::size_t> position() const noexcept { return position_; }

 private:
  Errc code_;
  std::optional<std::size_t> position_;
};

}  // namespace frobsurf
