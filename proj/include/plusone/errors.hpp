#pragma once

#include <stdexcept>
#include <string>

namespace plusone {

enum class ErrorKind {
  NonMonomialLeading,
  NonzeroConstantTerm,
  NotInvertible,
  NotPrenormal,
  NotNormal,
  DegenerateExtraction,
  NormalityBroken,
  Inconclusive,
  TruncationTooLow,
  DegenerateTangency,
  IrrationalRoot,
  SingularChange,
  UnknownTag,
  VerticalAtBase,
  DegeneratePencil,
  CoincidentFoliations,
  DegenerateWeb,
  EvaluatorDomain,
  NoConvergence,
  BadInput,
};

inline const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NonMonomialLeading: return "NonMonomialLeading";
    case ErrorKind::NonzeroConstantTerm: return "NonzeroConstantTerm";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::NotPrenormal: return "NotPrenormal";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::DegenerateExtraction: return "DegenerateExtraction";
    case ErrorKind::NormalityBroken: return "NormalityBroken";
    case ErrorKind::Inconclusive: return "Inconclusive";
    case ErrorKind::TruncationTooLow: return "TruncationTooLow";
    case ErrorKind::DegenerateTangency: return "DegenerateTangency";
    case ErrorKind::IrrationalRoot: return "IrrationalRoot";
    case ErrorKind::SingularChange: return "SingularChange";
    case ErrorKind::UnknownTag: return "UnknownTag";
    case ErrorKind::VerticalAtBase: return "VerticalAtBase";
    case ErrorKind::DegeneratePencil: return "DegeneratePencil";
    case ErrorKind::CoincidentFoliations: return "CoincidentFoliations";
    case ErrorKind::DegenerateWeb: return "DegenerateWeb";
    case ErrorKind::EvaluatorDomain: return "EvaluatorDomain";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::BadInput: return "BadInput";
  }
  return "Unknown";
}

// All domain failures of the library surface as this one type.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind k, const std::string& what)
      : std::runtime_error(std::string(kind_name(k)) + ": " + what), kind_(k) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& what) { throw Error(k, what); }

}  // namespace plusone
