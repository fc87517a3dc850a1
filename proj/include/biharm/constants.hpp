#pragma once

#include <string>
#include <vector>

#include "biharm/afem.hpp"

namespace biharm {

/// Principal eigenvalue of (D^2 u, D^2 v) = lambda b_s(u, v) on a triangle of
/// diameter one over the subspace V_X.
struct ConstantsSpec {
  /// equilateral, right-isosceles or 90-60-30.
  std::string shape = "equilateral";
  /// C (clamped), S (simply supported), V (vertex values) or M (vertex
  /// values and edge means of the normal derivative).
  char space = 'M';
  int s = 0;

  void validate() const;
  AfemConfig afem_config(long max_ndof, int threads = 1) const;
};

struct ConstantsResult {
  double lambda_min = 0.0;
  std::vector<LevelRecord> records;
};

ConstantsResult principal_eigenvalue(const ConstantsSpec& spec, long max_ndof = 20000, int threads = 1);

/// C_s = lambda_min^{-1/2}; throws NonPositiveEigenvalue.
double interpolation_constant(double lambda_min);

}  // namespace biharm
