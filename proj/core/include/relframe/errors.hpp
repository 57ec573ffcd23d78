#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace relframe {

enum class ErrorKind {
  DimensionError,
  NotAssociative,
  NoIdentity,
  NoInverse,
  InvalidTable,
  InvalidRepresentation,
  GroupMismatch,
  InvalidSystem,
  NotUnital,
  NotPositive,
  ImageOutsideTarget,
  OperatorOutsideSystem,
  RequiresFullAlgebra,
  NotAState,
  InvalidFrame,
  SeedNotPSD,
  SeedNotNormalizing,
  FactorizationFails,
  EffectSpanNotEquivariant,
  ObjectMismatch,
  NotCentral,
  NotUnitary,
  IllDefined,
  PhiNotEquivariant,
  SyntaxError,
  UnknownReference,
  DimensionMismatch,
  ValidationError,
  UnknownFormat,
};

std::string_view to_string(ErrorKind kind);

/// Evidence attached to a failed check or an error: a label and, when
/// meaningful, the offending operator.
struct Witness {
  std::string label;
  std::optional<Eigen::MatrixXcd> matrix;
  double value = 0.0;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::vector<Witness> witnesses = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<Witness>& witnesses() const noexcept { return witnesses_; }
  /// The message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
  std::vector<Witness> witnesses_;
};

}  // namespace relframe
