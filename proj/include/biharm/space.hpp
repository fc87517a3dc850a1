#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "biharm/domains.hpp"
#include "biharm/mesh.hpp"
#include "biharm/polynomial.hpp"

namespace biharm {

/// Vertex degrees of freedom, in storage order.
enum VertexDof : int { kValue = 0, kDx, kDy, kDxx, kDxy, kDyy, kVertexDofs };

inline constexpr int kElementDofs = 21;

/// Global numbering of the quintic Argyris space: six vertex DOFs per vertex
/// (all vertices first), then one midpoint normal derivative per edge, taken
/// along the edge's global normal.
class DofMap {
 public:
  DofMap() = default;
  DofMap(int num_vertices, int num_edges) : num_vertices_(num_vertices), num_edges_(num_edges) {}

  int size() const { return kVertexDofs * num_vertices_ + num_edges_; }
  int vertex_dof(int v, int k) const { return kVertexDofs * v + k; }
  int edge_dof(int e) const { return kVertexDofs * num_vertices_ + e; }

  /// Local order: 6 DOFs of v0, v1, v2, then the normal derivatives on local
  /// edges 0, 1, 2.
  std::array<int, kElementDofs> element_dofs(const Triangulation& mesh, int t) const;

 private:
  int num_vertices_ = 0;
  int num_edges_ = 0;
};

DofMap build_dof_map(const Triangulation& mesh);

/// Nodal basis of one triangle. Column i of `coeffs` holds basis function i
/// in the scaled monomials ((x-cx)/h)^a ((y-cy)/h)^b, c = centroid,
/// h = diameter.
struct ElementBasis {
  Eigen::Matrix<double, kElementDofs, kElementDofs> coeffs;
  Point2 center;
  double scale = 1.0;
  std::array<int, kElementDofs> dofs{};

  LocalPolynomial function(int i) const;
  /// Restriction to this triangle of the global function with DOF vector x.
  LocalPolynomial local(std::span<const double> x) const;
};

/// Row j of the returned matrix applies local functional j to the 21
/// monomials of triangle t (unscaled physical derivatives).
Eigen::Matrix<double, kElementDofs, kElementDofs> element_functionals(const Triangulation& mesh, int t,
                                                                        const Point2& center, double scale);

ElementBasis element_basis(const Triangulation& mesh, const DofMap& dofs, int t);
std::vector<ElementBasis> element_bases(const Triangulation& mesh, const DofMap& dofs, int threads = 1);

/// Global DOF vector of the Argyris interpolant of a smooth function; `jet`
/// returns {f, fx, fy, fxx, fxy, fyy} at a point.
template <typename Jet>
Eigen::VectorXd interpolate(const Triangulation& mesh, const DofMap& dofs, Jet&& jet) {
  Eigen::VectorXd x(dofs.size());
  for (int v = 0; v < mesh.num_points(); ++v) {
    const std::array<double, 6> d = jet(mesh.points()[v]);
    for (int k = 0; k < kVertexDofs; ++k) x[dofs.vertex_dof(v, k)] = d[k];
  }
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const EdgeFrame f = mesh.frame(e);
    const std::array<double, 6> d = jet(f.midpoint);
    x[dofs.edge_dof(e)] = f.normal.x * d[1] + f.normal.y * d[2];
  }
  return x;
}

/// Homogeneous sparse linear constraint sum_k c_k x_{i_k} = 0.
struct ConstraintRow {
  std::vector<std::pair<int, double>> terms;
};

struct ConstraintSet {
  std::vector<ConstraintRow> rows;
};

/// Essential conditions from the mesh edge labels (Clamped, SimplySupported)
/// plus the optional corner-value and segment-mean constraints of `spec`.
ConstraintSet boundary_constraints(const Triangulation& mesh, const DofMap& dofs,
                                   std::span<const ElementBasis> bases, const BoundarySpec& spec);

/// x = P y parametrizes the null space of the constraints.
struct ReductionMap {
  Eigen::SparseMatrix<double> prolongation;
  int full_dim = 0;
  int rank = 0;

  int n_free() const { return full_dim - rank; }
  Eigen::VectorXd expand(const Eigen::VectorXd& y) const { return prolongation * y; }
};

/// Gauss-Jordan elimination with largest-magnitude pivots. Rows whose
/// remainder falls below 1e-10 of their original size are dropped.
ReductionMap eliminate(const ConstraintSet& constraints, int full_dim);

/// Argyris space of a mesh together with the reduction to its constrained
/// subspace.
struct DiscreteSpace {
  DofMap dofs;
  std::vector<ElementBasis> bases;
  ReductionMap reduction;
};

DiscreteSpace build_space(const Triangulation& mesh, const BoundarySpec& spec, int threads = 1);

/// sum_i x_i d^alpha phi_i at p, with p required to lie in triangle t.
double evaluate(const Triangulation& mesh, std::span<const ElementBasis> bases, std::span<const double> x,
                int t, const Point2& p, int dx, int dy);

/// Debug dump: one block of 21 rows per triangle (columns are basis
/// functions, rows monomial coefficients).
void write_basis_csv(std::ostream& out, std::span<const ElementBasis> bases);

}  // namespace biharm
