#pragma once

#include <iosfwd>
#include <span>

#include <Eigen/Sparse>

#include "biharm/mesh.hpp"
#include "biharm/space.hpp"

namespace biharm {

/// Symmetric matrix in full (both triangles) compressed storage.
class SparseSymMatrix {
 public:
  using Storage = Eigen::SparseMatrix<double>;

  SparseSymMatrix() = default;
  explicit SparseSymMatrix(Storage m);

  int dim() const { return static_cast<int>(m_.rows()); }
  long nnz() const { return static_cast<long>(m_.nonZeros()); }
  const Storage& matrix() const { return m_; }

  /// max |M - M^T| / max |M|.
  double asymmetry() const;
  double quad_form(const Eigen::VectorXd& x) const { return x.dot(m_ * x); }

 private:
  Storage m_;
};

enum class MassForm : int { L2 = 0, Gradient = 1 };

/// Elementwise block matrices of the stiffness form (D^2 u, D^2 v) and the
/// forms b_0 = (u, v), b_1 = (grad u, grad v) in local DOF order.
using ElementMatrix = Eigen::Matrix<double, kElementDofs, kElementDofs>;
ElementMatrix element_stiffness(const Triangulation& mesh, const ElementBasis& basis, int t, int quad_degree = 12);
ElementMatrix element_mass(const Triangulation& mesh, const ElementBasis& basis, int t, MassForm form,
                           int quad_degree = 12);

SparseSymMatrix assemble_stiffness(const Triangulation& mesh, const DofMap& dofs,
                                   std::span<const ElementBasis> bases, int threads = 1, int quad_degree = 12);
SparseSymMatrix assemble_mass(const Triangulation& mesh, const DofMap& dofs, std::span<const ElementBasis> bases,
                              MassForm form, int threads = 1, int quad_degree = 12);

/// (D^2 u, D^2 u) / b_s(u, u) for the full DOF vector u, integrated
/// triangle by triangle from the local polynomials. Much less affected by
/// cancellation than the quadratic forms of the assembled matrices.
double rayleigh_quotient(const Triangulation& mesh, std::span<const ElementBasis> bases, std::span<const double> u,
                         MassForm form);

/// P^T M P.
SparseSymMatrix reduce(const SparseSymMatrix& m, const ReductionMap& p);

/// Coordinate text format: header "n nnz", then "i j value" lines (0-based).
void write_coordinate(std::ostream& out, const SparseSymMatrix& m);
SparseSymMatrix read_coordinate(std::istream& in);

}  // namespace biharm
