#include "biharm/space.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <set>
#include <unordered_map>

#include "biharm/error.hpp"
#include "biharm/quadrature.hpp"
#include "biharm/parallel.hpp"

namespace biharm {

namespace {

using ElementMatrix = Eigen::Matrix<double, kElementDofs, kElementDofs>;

// Derivative order of local functional j.
constexpr std::array<int, kElementDofs> kFunctionalOrder{0, 1, 1, 2, 2, 2, 0, 1, 1, 2, 2, 2,
                                                         0, 1, 1, 2, 2, 2, 1, 1, 1};
constexpr std::array<std::array<int, 2>, kVertexDofs> kVertexMultiIndex{{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}}};

// Functionals scaled by h^order, applied to the scaled monomials: entries are
// O(1) for any triangle size.
ElementMatrix scaled_functionals(const Triangulation& mesh, int t, const Point2& c, double h) {
  ElementMatrix rows;
  const auto& v = mesh.tris()[t].v;
  for (int k = 0; k < 3; ++k) {
    const Point2& z = mesh.points()[v[k]];
    const double xi = (z.x - c.x) / h;
    const double eta = (z.y - c.y) / h;
    for (int d = 0; d < kVertexDofs; ++d) {
      rows.row(kVertexDofs * k + d) =
          monomial_derivatives(xi, eta, kVertexMultiIndex[d][0], kVertexMultiIndex[d][1]).transpose();
    }
  }
  for (int k = 0; k < 3; ++k) {
    const EdgeFrame f = mesh.frame(mesh.tri_edge(t, k));
    const double xi = (f.midpoint.x - c.x) / h;
    const double eta = (f.midpoint.y - c.y) / h;
    rows.row(18 + k) = (f.normal.x * monomial_derivatives(xi, eta, 1, 0) +
                        f.normal.y * monomial_derivatives(xi, eta, 0, 1))
                           .transpose();
  }
  return rows;
}

}  // namespace

std::array<int, kElementDofs> DofMap::element_dofs(const Triangulation& mesh, int t) const {
  std::array<int, kElementDofs> out{};
  const auto& v = mesh.tris()[t].v;
  for (int k = 0; k < 3; ++k) {
    for (int d = 0; d < kVertexDofs; ++d) out[kVertexDofs * k + d] = vertex_dof(v[k], d);
    out[18 + k] = edge_dof(mesh.tri_edge(t, k));
  }
  return out;
}

DofMap build_dof_map(const Triangulation& mesh) { return DofMap(mesh.num_points(), mesh.num_edges()); }

LocalPolynomial ElementBasis::function(int i) const {
  LocalPolynomial p;
  p.coeffs = coeffs.col(i);
  p.center = center;
  p.scale = scale;
  return p;
}

LocalPolynomial ElementBasis::local(std::span<const double> x) const {
  Eigen::Matrix<double, kElementDofs, 1> local_x;
  for (int i = 0; i < kElementDofs; ++i) local_x[i] = x[dofs[i]];
  LocalPolynomial p;
  p.coeffs = coeffs * local_x;
  p.center = center;
  p.scale = scale;
  return p;
}

ElementMatrix element_functionals(const Triangulation& mesh, int t, const Point2& center, double scale) {
  ElementMatrix rows = scaled_functionals(mesh, t, center, scale);
  for (int j = 0; j < kElementDofs; ++j) rows.row(j) /= std::pow(scale, kFunctionalOrder[j]);
  return rows;
}

ElementBasis element_basis(const Triangulation& mesh, const DofMap& dofs, int t) {
  ElementBasis basis;
  basis.center = mesh.centroid(t);
  basis.scale = mesh.diameter(t);
  basis.dofs = dofs.element_dofs(mesh, t);
  const ElementMatrix rows = scaled_functionals(mesh, t, basis.center, basis.scale);
  const Eigen::FullPivLU<ElementMatrix> lu(rows);
  if (!lu.isInvertible() || lu.rcond() < 1e-14) {
    throw Error(ErrorKind::SingularElementMatrix, "triangle " + std::to_string(t));
  }
  // The scaled functional j equals h^order_j times the physical one, so the
  // physical nodal basis is the scaled one times h^order.
  basis.coeffs = lu.inverse();
  for (int i = 0; i < kElementDofs; ++i) basis.coeffs.col(i) *= std::pow(basis.scale, kFunctionalOrder[i]);
  return basis;
}

std::vector<ElementBasis> element_bases(const Triangulation& mesh, const DofMap& dofs, int threads) {
  std::vector<ElementBasis> out(mesh.num_tris());
  parallel_for(mesh.num_tris(), threads, [&](int t) { out[t] = element_basis(mesh, dofs, t); });
  return out;
}

ConstraintSet boundary_constraints(const Triangulation& mesh, const DofMap& dofs,
                                   std::span<const ElementBasis> bases, const BoundarySpec& spec) {
  ConstraintSet set;
  auto unit = [&](int dof) { set.rows.push_back({{{dof, 1.0}}}); };
  auto first_order = [&](int v, const Point2& d) {
    set.rows.push_back({{{dofs.vertex_dof(v, kDx), d.x}, {dofs.vertex_dof(v, kDy), d.y}}});
  };
  // d_a d_b v = a^T D^2 v b over the Cartesian Hessian DOFs.
  auto second_order = [&](int v, const Point2& a, const Point2& b) {
    set.rows.push_back({{{dofs.vertex_dof(v, kDxx), a.x * b.x},
                         {dofs.vertex_dof(v, kDxy), a.x * b.y + a.y * b.x},
                         {dofs.vertex_dof(v, kDyy), a.y * b.y}}});
  };

  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& edge = mesh.edges()[e];
    if (edge.label != BoundaryLabel::Clamped && edge.label != BoundaryLabel::SimplySupported) continue;
    const EdgeFrame f = mesh.frame(e);
    const bool clamped = edge.label == BoundaryLabel::Clamped;
    for (int v : {edge.lo, edge.hi}) {
      unit(dofs.vertex_dof(v, kValue));
      first_order(v, f.tangent);
      second_order(v, f.tangent, f.tangent);
      if (clamped) {
        first_order(v, f.normal);
        second_order(v, f.tangent, f.normal);
      }
    }
    if (clamped) unit(dofs.edge_dof(e));
  }

  if (spec.corner_values || spec.edge_means) {
    for (int v : mesh.corner_vertices()) unit(dofs.vertex_dof(v, kValue));
  }

  if (spec.edge_means) {
    std::map<int, std::map<int, double>> segment_rows;
    const LineRule& line = edge_quadrature();
    for (int e = 0; e < mesh.num_edges(); ++e) {
      const Edge& edge = mesh.edges()[e];
      if (!edge.on_boundary()) continue;
      const ElementBasis& basis = bases[edge.tris[0]];
      const Point2& a = mesh.points()[edge.lo];
      const Point2& b = mesh.points()[edge.hi];
      const double length = std::hypot(b.x - a.x, b.y - a.y);
      const Point2 n = mesh.frame(e).normal;
      const double sign = mesh.outward_sign(edge.tris[0], e);
      Eigen::Matrix<double, kElementDofs, 1> integrals = Eigen::Matrix<double, kElementDofs, 1>::Zero();
      for (std::size_t q = 0; q < line.points.size(); ++q) {
        const double s = line.points[q];
        const double xi = (a.x + s * (b.x - a.x) - basis.center.x) / basis.scale;
        const double eta = (a.y + s * (b.y - a.y) - basis.center.y) / basis.scale;
        const auto dn = n.x * monomial_derivatives(xi, eta, 1, 0) + n.y * monomial_derivatives(xi, eta, 0, 1);
        integrals += (sign * line.weights[q] * length / basis.scale) * (basis.coeffs.transpose() * dn);
      }
      const double largest = integrals.cwiseAbs().maxCoeff();
      auto& row = segment_rows[edge.segment];
      for (int i = 0; i < kElementDofs; ++i) {
        // Basis functions not attached to the edge have zero trace.
        if (std::abs(integrals[i]) > 1e-12 * largest) row[basis.dofs[i]] += integrals[i];
      }
    }
    for (const auto& [segment, row] : segment_rows) {
      ConstraintRow r;
      r.terms.assign(row.begin(), row.end());
      set.rows.push_back(std::move(r));
    }
  }
  return set;
}

ReductionMap eliminate(const ConstraintSet& constraints, int full_dim) {
  // Reduced row echelon form: every stored row has coefficient 1 at its pivot
  // and no other pivot column.
  std::unordered_map<int, std::map<int, double>> pivot_rows;
  std::unordered_map<int, std::set<int>> occurs_in;  // column -> pivots whose rows contain it

  for (const ConstraintRow& input : constraints.rows) {
    std::map<int, double> row;
    double size = 0.0;
    for (const auto& [col, val] : input.terms) {
      if (col < 0 || col >= full_dim) throw Error(ErrorKind::DimensionMismatch, "constraint column out of range");
      if (!std::isfinite(val)) throw Error(ErrorKind::InvalidSpec, "non-finite constraint");
      row[col] += val;
      size = std::max(size, std::abs(val));
    }
    if (size == 0.0) continue;
    std::vector<std::pair<int, double>> to_substitute;
    for (const auto& [col, val] : row) {
      if (pivot_rows.count(col)) to_substitute.emplace_back(col, val);
    }
    for (const auto& [col, val] : to_substitute) {
      for (const auto& [c, v] : pivot_rows[col]) row[c] -= val * v;
      row.erase(col);
    }
    int pivot = -1;
    double best = 0.0;
    for (const auto& [col, val] : row) {
      if (std::abs(val) > best) {
        best = std::abs(val);
        pivot = col;
      }
    }
    if (best <= 1e-10 * size) continue;
    const double scale = row[pivot];
    std::map<int, double> normalized;
    for (const auto& [col, val] : row) {
      if (col == pivot) continue;
      const double v = val / scale;
      if (v != 0.0) normalized[col] = v;
    }
    normalized[pivot] = 1.0;
    // Remove the new pivot column from existing rows.
    if (auto it = occurs_in.find(pivot); it != occurs_in.end()) {
      const std::set<int> users = it->second;
      for (int p : users) {
        auto& other = pivot_rows[p];
        const double factor = other[pivot];
        other.erase(pivot);
        for (const auto& [col, val] : normalized) {
          if (col == pivot) continue;
          other[col] -= factor * val;
          occurs_in[col].insert(p);
        }
      }
      occurs_in.erase(pivot);
    }
    for (const auto& [col, val] : normalized) {
      if (col != pivot) occurs_in[col].insert(pivot);
    }
    pivot_rows.emplace(pivot, std::move(normalized));
  }

  ReductionMap map;
  map.full_dim = full_dim;
  map.rank = static_cast<int>(pivot_rows.size());
  std::vector<int> column(full_dim, -1);
  int n = 0;
  for (int i = 0; i < full_dim; ++i) {
    if (!pivot_rows.count(i)) column[i] = n++;
  }
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(full_dim);
  for (int i = 0; i < full_dim; ++i) {
    if (column[i] >= 0) {
      triplets.emplace_back(i, column[i], 1.0);
      continue;
    }
    for (const auto& [col, val] : pivot_rows[i]) {
      if (col != i && val != 0.0) triplets.emplace_back(i, column[col], -val);
    }
  }
  map.prolongation.resize(full_dim, n);
  map.prolongation.setFromTriplets(triplets.begin(), triplets.end());
  return map;
}

DiscreteSpace build_space(const Triangulation& mesh, const BoundarySpec& spec, int threads) {
  DiscreteSpace space;
  space.dofs = build_dof_map(mesh);
  space.bases = element_bases(mesh, space.dofs, threads);
  space.reduction = eliminate(boundary_constraints(mesh, space.dofs, space.bases, spec), space.dofs.size());
  return space;
}

double evaluate(const Triangulation& mesh, std::span<const ElementBasis> bases, std::span<const double> x,
                int t, const Point2& p, int dx, int dy) {
  if (dx < 0 || dy < 0 || dx + dy > 4) throw Error(ErrorKind::InvalidSpec, "derivative order must be <= 4");
  const auto& v = mesh.tris()[t].v;
  const Point2& a = mesh.points()[v[0]];
  const Point2& b = mesh.points()[v[1]];
  const Point2& c = mesh.points()[v[2]];
  const double det = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
  const double l1 = ((p.x - a.x) * (c.y - a.y) - (c.x - a.x) * (p.y - a.y)) / det;
  const double l2 = ((b.x - a.x) * (p.y - a.y) - (p.x - a.x) * (b.y - a.y)) / det;
  constexpr double tol = -1e-10;
  if (l1 < tol || l2 < tol || 1.0 - l1 - l2 < tol) {
    throw Error(ErrorKind::PointOutsideTriangle, "triangle " + std::to_string(t));
  }
  return bases[t].local(x).eval(p, dx, dy);
}

void write_basis_csv(std::ostream& out, std::span<const ElementBasis> bases) {
  out << "triangle,monomial";
  for (int i = 0; i < kElementDofs; ++i) out << ",phi" << i;
  out << '\n';
  out.precision(17);
  for (std::size_t t = 0; t < bases.size(); ++t) {
    for (int r = 0; r < kElementDofs; ++r) {
      out << t << ',' << r;
      for (int i = 0; i < kElementDofs; ++i) out << ',' << bases[t].coeffs(r, i);
      out << '\n';
    }
  }
}

}  // namespace biharm
