#include "relframe/errors.hpp"

#include <utility>

namespace relframe {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionError: return "DimensionError";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::NoIdentity: return "NoIdentity";
    case ErrorKind::NoInverse: return "NoInverse";
    case ErrorKind::InvalidTable: return "InvalidTable";
    case ErrorKind::InvalidRepresentation: return "InvalidRepresentation";
    case ErrorKind::GroupMismatch: return "GroupMismatch";
    case ErrorKind::InvalidSystem: return "InvalidSystem";
    case ErrorKind::NotUnital: return "NotUnital";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::ImageOutsideTarget: return "ImageOutsideTarget";
    case ErrorKind::OperatorOutsideSystem: return "OperatorOutsideSystem";
    case ErrorKind::RequiresFullAlgebra: return "RequiresFullAlgebra";
    case ErrorKind::NotAState: return "NotAState";
    case ErrorKind::InvalidFrame: return "InvalidFrame";
    case ErrorKind::SeedNotPSD: return "SeedNotPSD";
    case ErrorKind::SeedNotNormalizing: return "SeedNotNormalizing";
    case ErrorKind::FactorizationFails: return "FactorizationFails";
    case ErrorKind::EffectSpanNotEquivariant: return "EffectSpanNotEquivariant";
    case ErrorKind::ObjectMismatch: return "ObjectMismatch";
    case ErrorKind::NotCentral: return "NotCentral";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::IllDefined: return "IllDefined";
    case ErrorKind::PhiNotEquivariant: return "PhiNotEquivariant";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownReference: return "UnknownReference";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::UnknownFormat: return "UnknownFormat";
  }
  return "UnknownError";
}

Error::Error(ErrorKind kind, const std::string& message,
             std::vector<Witness> witnesses)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      detail_(message),
      witnesses_(std::move(witnesses)) {}

}  // namespace relframe
