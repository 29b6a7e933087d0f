#include "crownlab/errors.hpp"

namespace crownlab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SingularRecursion: return "SingularRecursion";
    case ErrorKind::PoleProximity: return "PoleProximity";
    case ErrorKind::NotInPositiveChamber: return "NotInPositiveChamber";
    case ErrorKind::MinorVanishes: return "MinorVanishes";
    case ErrorKind::BranchAmbiguity: return "BranchAmbiguity";
    case ErrorKind::QuadratureUnconverged: return "QuadratureUnconverged";
    case ErrorKind::EigFailure: return "EigFailure";
    case ErrorKind::DegenerateSample: return "DegenerateSample";
  }
  return "Unknown";
}

}  // namespace crownlab
