#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace biharm {

enum class ErrorKind {
  NonConforming,
  ZeroArea,
  InconsistentLabel,
  UnknownDomain,
  InvalidBoundarySpec,
  SingularElementMatrix,
  InvalidSpec,
  PointOutsideTriangle,
  UnsupportedDegree,
  DimensionMismatch,
  SingularShift,
  NoConvergence,
  InconsistentPair,
  AllZeroEstimator,
  InsufficientData,
  NonPositiveError,
  NonPositiveEigenvalue,
  ParseError,
  InvalidConfig,
};

std::string_view to_string(ErrorKind kind);

/// Exception carrying a machine-checkable kind. what() starts with the kind
/// name, e.g. "UnknownDomain: nosuch".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace biharm
