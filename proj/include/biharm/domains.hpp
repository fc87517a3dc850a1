#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "biharm/mesh.hpp"

namespace biharm {

/// Boundary conditions per boundary component ("outer", "inner"; "*" means
/// every component) plus the point/mean constraints of the triangle
/// benchmarks.
struct BoundarySpec {
  std::vector<std::pair<std::string, BoundaryLabel>> components;
  /// Function values vanish at the domain corners.
  bool corner_values = false;
  /// Mean of the outward normal derivative vanishes on every straight
  /// boundary segment (kernel of the Morley interpolation with corner_values).
  bool edge_means = false;

  friend bool operator==(const BoundarySpec&, const BoundarySpec&) = default;
};

/// Accepts "clamped", "simply-supported", "free" (or C/S/F), the triangle
/// spaces "V"/"vertex" and "M"/"morley", and per-component lists such as
/// "outer=free,inner=clamped".
BoundarySpec parse_boundary_spec(std::string_view text);
std::string format_boundary_spec(const BoundarySpec& spec);

struct Domain {
  std::string name;
  Triangulation mesh;
  BoundarySpec bc;
};

/// Catalog names: square, lshape, drum1, drum2, rect-hole, tri-equilateral,
/// tri-right-isosceles, tri-90-60-30.
const std::vector<std::string>& domain_names();
BoundarySpec default_boundary(std::string_view name);
double domain_area(std::string_view name);

/// Initial mesh of a catalog domain with boundary labels applied. Boundary
/// segments are the maximal straight pieces of each boundary loop.
Domain domain_catalog(std::string_view name, const BoundarySpec& bc);

}  // namespace biharm
