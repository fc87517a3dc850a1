#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace biharm {

/// Published reference eigenvalue, kept as the decimal string it was
/// printed with.
struct ReferenceEntry {
  int j = 0;
  std::string_view value;
  /// Significant digits of `value`.
  int digits = 0;

  double to_double() const;
};

struct ReferenceTable {
  std::string_view id;
  std::string_view caption;
  std::vector<ReferenceEntry> entries;

  /// Throws InvalidConfig when index j is absent.
  const ReferenceEntry& entry(int j) const;
};

/// Benchmark ids: square, lshape, drums-simply-supported,
/// drums-clamped-left, drums-clamped-right, rect-hole and
/// triangle-<shape>-s<0|1> (entries j = 1..4 for the spaces C, S, V, M).
const std::vector<ReferenceTable>& reference_tables();
const ReferenceTable& reference_table(std::string_view id);

/// Triangle shapes and subspaces of the interpolation-constant benchmark.
const std::vector<std::string>& triangle_shapes();
inline constexpr std::string_view kTriangleSpaces = "CSVM";
std::string triangle_table_id(std::string_view shape, int s);

/// Printed Morley interpolation constants C_s for the equilateral and the
/// right-isosceles triangle.
struct ConstantReference {
  std::string_view shape;
  int s = 0;
  std::string_view value;
};
const std::vector<ConstantReference>& constant_references();

/// Number of significant digits in a decimal string.
int significant_digits(std::string_view decimal);

/// |computed - ref| / |ref| with the reference rounded to binary64.
double relative_deviation(double computed, const ReferenceEntry& ref);

}  // namespace biharm
