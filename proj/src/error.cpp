#include "biharm/error.hpp"

namespace biharm {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonConforming: return "NonConforming";
    case ErrorKind::ZeroArea: return "ZeroArea";
    case ErrorKind::InconsistentLabel: return "InconsistentLabel";
    case ErrorKind::UnknownDomain: return "UnknownDomain";
    case ErrorKind::InvalidBoundarySpec: return "InvalidBoundarySpec";
    case ErrorKind::SingularElementMatrix: return "SingularElementMatrix";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::PointOutsideTriangle: return "PointOutsideTriangle";
    case ErrorKind::UnsupportedDegree: return "UnsupportedDegree";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SingularShift: return "SingularShift";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::InconsistentPair: return "InconsistentPair";
    case ErrorKind::AllZeroEstimator: return "AllZeroEstimator";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::NonPositiveError: return "NonPositiveError";
    case ErrorKind::NonPositiveEigenvalue: return "NonPositiveEigenvalue";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) +
                         (detail.empty() ? "" : ": " + detail)),
      kind_(kind),
      detail_(detail) {}

}  // namespace biharm
