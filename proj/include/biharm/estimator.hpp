#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "biharm/assembly.hpp"
#include "biharm/mesh.hpp"
#include "biharm/polynomial.hpp"
#include "biharm/space.hpp"

namespace biharm {

/// Per-triangle squared error indicators and their three parts:
///   volume         |T|^2   ||lambda u - Delta^2 u||^2_T
///   normal_normal  |T|^1/2 ||[d_nn u]||^2 on edges that are not clamped
///   normal_laplace |T|^3/2 ||[d_ttn u + d_n Delta u]||^2 on interior and
///                  free edges
/// Interior brackets are two-sided jumps, boundary brackets one-sided traces.
/// For the form b_1 the volume residual is -lambda Delta u - Delta^2 u and the
/// free-edge trace gains lambda d_n u.
struct EstimatorReport {
  std::vector<double> eta2;
  std::vector<double> volume;
  std::vector<double> normal_normal;
  std::vector<double> normal_laplace;

  /// Sum of eta2 in triangle order.
  double total_squared() const;
};

/// Estimator of the piecewise quintic with restriction `locals[t]` on
/// triangle t. Boundary treatment follows the mesh edge labels.
EstimatorReport estimate_polynomials(const Triangulation& mesh, std::span<const LocalPolynomial> locals,
                                     double lambda, MassForm form = MassForm::L2, int threads = 1);

/// Estimator of the discrete eigenpair (lambda, u) with u a full
/// (unreduced) DOF vector of the Argyris space.
EstimatorReport local_estimator(const Triangulation& mesh, const DofMap& dofs, std::span<const ElementBasis> bases,
                                std::span<const double> u, double lambda, MassForm form = MassForm::L2,
                                int threads = 1);

/// sqrt(sum_T eta^2(T)).
double estimator_total(const EstimatorReport& report);

/// CSV with header tri_index,eta2,vol_term,nu_nu_term,nu_lap_term.
void write_estimator_csv(std::ostream& out, const EstimatorReport& report);

}  // namespace biharm
