#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace biharm {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

enum class BoundaryLabel : std::uint8_t { Interior, Clamped, SimplySupported, Free };

char label_code(BoundaryLabel label);
BoundaryLabel label_from_code(char code);
std::string_view to_string(BoundaryLabel label);

/// Counterclockwise triangle. Local edge k joins v[k] and v[(k+1)%3];
/// ref_edge names the local edge that newest-vertex bisection cuts next.
struct Triangle {
  std::array<int, 3> v{};
  int ref_edge = 0;

  friend bool operator==(const Triangle&, const Triangle&) = default;
};

struct Edge {
  int lo = 0;
  int hi = 0;
  BoundaryLabel label = BoundaryLabel::Interior;
  /// Boundary segment id (straight piece of the domain boundary), -1 inside.
  int segment = -1;
  std::array<int, 2> tris{-1, -1};

  bool on_boundary() const { return tris[1] < 0; }
};

/// Unit tangent lo->hi, normal = tangent rotated by +90 degrees.
struct EdgeFrame {
  Point2 tangent;
  Point2 normal;
  Point2 midpoint;
  double length = 0.0;
};

/// Label (and segment) of one boundary edge given by its two endpoints.
struct BoundaryEdgeSpec {
  int a = 0;
  int b = 0;
  BoundaryLabel label = BoundaryLabel::Clamped;
  int segment = 0;
};

/// Conforming triangulation with NVB bookkeeping. Immutable once built; all
/// refinements return a new mesh.
class Triangulation {
 public:
  Triangulation() = default;

  const std::vector<Point2>& points() const { return points_; }
  const std::vector<Triangle>& tris() const { return tris_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int level() const { return level_; }

  int num_points() const { return static_cast<int>(points_.size()); }
  int num_tris() const { return static_cast<int>(tris_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  /// Global edge index of local edge k of triangle t.
  int tri_edge(int t, int k) const { return tri_edges_[t][k]; }
  const std::array<int, 3>& tri_edges(int t) const { return tri_edges_[t]; }

  /// Edge index joining a and b, or -1.
  int find_edge(int a, int b) const;

  double area(int t) const;
  double diameter(int t) const;
  Point2 centroid(int t) const;
  double total_area() const;
  EdgeFrame frame(int e) const;

  /// +1 if the outward normal of t on edge e equals frame(e).normal, else -1.
  int outward_sign(int t, int e) const;

  /// Vertices where two boundary edges of different segments meet.
  std::vector<int> corner_vertices() const;

  /// Full regularity check: edge multiplicity, orientation, hanging vertices.
  /// Throws Error(NonConforming) on failure.
  void validate() const;

  friend Triangulation assemble_triangulation(std::vector<Point2> points,
                                              std::vector<Triangle> tris,
                                              std::span<const BoundaryEdgeSpec> boundary,
                                              std::optional<BoundaryLabel> default_label,
                                              int level, bool check_hanging);

 private:
  std::vector<Point2> points_;
  std::vector<Triangle> tris_;
  std::vector<Edge> edges_;
  std::vector<std::array<int, 3>> tri_edges_;
  std::unordered_map<std::uint64_t, int> edge_lookup_;
  int level_ = 0;
};

/// Builds a mesh from vertex triples; orients triangles counterclockwise and
/// assigns the longest edge (ties: smallest opposite vertex) as refinement
/// edge. Boundary edges missing from `boundary` get `default_label`, or
/// InconsistentLabel when none is given.
Triangulation build_triangulation(std::vector<Point2> points,
                                  std::span<const std::array<int, 3>> tris,
                                  std::span<const BoundaryEdgeSpec> boundary,
                                  std::optional<BoundaryLabel> default_label = std::nullopt);

/// Same as build_triangulation but keeps the given orientation and refinement
/// edges. Used by refinement and the mesh reader.
Triangulation assemble_triangulation(std::vector<Point2> points, std::vector<Triangle> tris,
                                     std::span<const BoundaryEdgeSpec> boundary,
                                     std::optional<BoundaryLabel> default_label, int level,
                                     bool check_hanging);

/// Smallest conforming NVB refinement in which every marked triangle is
/// bisected at least once.
Triangulation nvb_refine(const Triangulation& mesh, std::span<const int> marked);

/// Uniform red refinement (four congruent children per triangle).
Triangulation red_refine(const Triangulation& mesh);

/// Text mesh format. Coordinates use shortest round-trip decimal output.
void write_mesh(std::ostream& out, const Triangulation& mesh);
Triangulation read_mesh(std::istream& in);

}  // namespace biharm
