#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "biharm/assembly.hpp"

namespace biharm {

struct SolverConfig {
  /// Eigenvalues nearest the shift are returned.
  double shift = 0.0;
  int count = 10;
  /// Bound on ||A x - lambda B x|| / (lambda ||B x||). Pairs whose normwise
  /// backward error is within 100 eps are accepted as well.
  double tol = 1e-10;
  /// Largest Krylov dimension; 0 picks max(4 count + 40, 120).
  int max_dim = 0;
  std::uint64_t seed = 1;
};

struct EigenPair {
  double value = 0.0;
  /// B-normalized; largest-magnitude entry positive.
  Eigen::VectorXd x;
  /// 1-based position in the ascending list returned by solve_eigs.
  int index = 0;
};

/// Sparse LDL^T of A - shift B.
class Factorization {
 public:
  Factorization(const SparseSymMatrix& a, const SparseSymMatrix& b, double shift);
  ~Factorization();
  Factorization(Factorization&&) noexcept;
  Factorization& operator=(Factorization&&) noexcept;

  double shift() const { return shift_; }
  int dim() const { return dim_; }
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  double shift_ = 0.0;
  int dim_ = 0;
};

/// Shift-invert Lanczos in the B inner product with full
/// reorthogonalization. Returns min(count, dim) pairs sorted by value.
std::vector<EigenPair> solve_eigs(const SparseSymMatrix& a, const SparseSymMatrix& b, const SolverConfig& cfg);

double eig_residual(const SparseSymMatrix& a, const SparseSymMatrix& b, const EigenPair& pair);

}  // namespace biharm
