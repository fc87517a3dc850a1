#include "biharm/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include <Eigen/SparseCholesky>

#include "biharm/error.hpp"

namespace biharm {

struct Factorization::Impl {
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt;
};

Factorization::Factorization(const SparseSymMatrix& a, const SparseSymMatrix& b, double shift)
    : impl_(std::make_unique<Impl>()), shift_(shift), dim_(a.dim()) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "A and B differ in size");
  Eigen::SparseMatrix<double> k = a.matrix();
  if (shift != 0.0) k -= shift * b.matrix();
  impl_->ldlt.compute(k);
  if (impl_->ldlt.info() != Eigen::Success) {
    throw Error(ErrorKind::SingularShift, "factorization failed at shift " + std::to_string(shift));
  }
  const Eigen::VectorXd d = impl_->ldlt.vectorD();
  const auto& perm = impl_->ldlt.permutationP().indices();
  const Eigen::VectorXd diag = k.diagonal();
  // A zero pivot relative to its diagonal entry means the shift hits an
  // eigenvalue. For shift 0 (A is SPD) only exact breakdown counts.
  const double rel = shift != 0.0 ? 1e-14 : 0.0;
  for (int i = 0; i < dim_; ++i) {
    const double pivot = d[perm[i]];
    if (!std::isfinite(pivot) || std::abs(pivot) <= rel * std::abs(diag[i]) || pivot == 0.0) {
      throw Error(ErrorKind::SingularShift, "zero pivot at shift " + std::to_string(shift));
    }
  }
}

Factorization::~Factorization() = default;
Factorization::Factorization(Factorization&&) noexcept = default;
Factorization& Factorization::operator=(Factorization&&) noexcept = default;

Eigen::VectorXd Factorization::solve(const Eigen::VectorXd& rhs) const { return impl_->ldlt.solve(rhs); }

double eig_residual(const SparseSymMatrix& a, const SparseSymMatrix& b, const EigenPair& pair) {
  if (pair.x.size() != a.dim() || a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "eig_residual");
  const Eigen::VectorXd bx = b.matrix() * pair.x;
  const Eigen::VectorXd r = a.matrix() * pair.x - pair.value * bx;
  return r.norm() / (std::abs(pair.value) * bx.norm());
}

namespace {

// Normwise backward error of an approximate pair (infinity norms of A, B).
double backward_error(const SparseSymMatrix& a, const SparseSymMatrix& b, const EigenPair& pair) {
  auto norm_inf = [](const SparseSymMatrix::Storage& m) {
    return (m.cwiseAbs() * Eigen::VectorXd::Ones(m.cols())).maxCoeff();
  };
  const Eigen::VectorXd r = a.matrix() * pair.x - pair.value * (b.matrix() * pair.x);
  return r.lpNorm<Eigen::Infinity>() /
         ((norm_inf(a.matrix()) + std::abs(pair.value) * norm_inf(b.matrix())) * pair.x.lpNorm<Eigen::Infinity>());
}

constexpr double kBackwardTol = 100.0 * std::numeric_limits<double>::epsilon();

class Lanczos {
 public:
  Lanczos(const SparseSymMatrix& b, const Factorization& f, std::uint64_t seed)
      : b_(b), f_(f), rng_(seed) {}

  int size() const { return static_cast<int>(q_.size()); }

  // Appends a random start vector B-orthogonal to the current basis.
  bool restart() {
    const int n = b_.dim();
    std::normal_distribution<double> normal;
    for (int attempt = 0; attempt < 5; ++attempt) {
      Eigen::VectorXd r(n);
      for (int i = 0; i < n; ++i) r[i] = normal(rng_);
      // Start in the range of the operator so that no rough component of the
      // random vector survives in the Ritz vectors.
      r = f_.solve(b_.matrix() * r);
      const double before = std::sqrt(std::max(0.0, r.dot(b_.matrix() * r)));
      orthogonalize(r);
      orthogonalize(r);
      Eigen::VectorXd br = b_.matrix() * r;
      const double nrm = std::sqrt(std::max(0.0, r.dot(br)));
      if (nrm > 1e-8 * before) {
        if (!q_.empty()) beta_.push_back(0.0);
        q_.push_back(r / nrm);
        bq_.push_back(br / nrm);
        return true;
      }
    }
    return false;
  }

  // One step; returns false on an invariant subspace.
  bool step() {
    const int j = size() - 1;
    Eigen::VectorXd w = f_.solve(bq_[j]);
    const double a = bq_[j].dot(w);
    w -= a * q_[j];
    if (j > 0) w -= beta_[j - 1] * q_[j - 1];
    orthogonalize(w);
    orthogonalize(w);
    alpha_.push_back(a);
    Eigen::VectorXd bw = b_.matrix() * w;
    const double nrm = std::sqrt(std::max(0.0, w.dot(bw)));
    const double ref = std::max(std::abs(a), j > 0 ? std::abs(beta_[j - 1]) : 0.0);
    if (!(nrm > 1e-12 * ref)) return false;
    beta_.push_back(nrm);
    q_.push_back(w / nrm);
    bq_.push_back(bw / nrm);
    return true;
  }

  // Tridiagonal projection of the current (complete) steps.
  Eigen::MatrixXd projection(int m) const {
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      t(i, i) = alpha_[i];
      if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta_[i];
    }
    return t;
  }

  double trailing_beta(int m) const { return m - 1 < static_cast<int>(beta_.size()) ? beta_[m - 1] : 0.0; }

  Eigen::VectorXd combine(const Eigen::VectorXd& s) const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(b_.dim());
    for (int i = 0; i < s.size(); ++i) x += s[i] * q_[i];
    return x;
  }

  int completed() const { return static_cast<int>(alpha_.size()); }

 private:
  void orthogonalize(Eigen::VectorXd& w) const {
    for (std::size_t i = 0; i < q_.size(); ++i) w -= bq_[i].dot(w) * q_[i];
  }

  const SparseSymMatrix& b_;
  const Factorization& f_;
  std::mt19937_64 rng_;
  std::vector<Eigen::VectorXd> q_;
  std::vector<Eigen::VectorXd> bq_;
  std::vector<double> alpha_;
  std::vector<double> beta_;
};

}  // namespace

std::vector<EigenPair> solve_eigs(const SparseSymMatrix& a, const SparseSymMatrix& b, const SolverConfig& cfg) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "A and B differ in size");
  if (cfg.count < 1 || !(cfg.tol > 0.0)) throw Error(ErrorKind::InvalidConfig, "count >= 1 and tol > 0 required");
  const int n = a.dim();
  if (n == 0) return {};
  const int k = std::min(cfg.count, n);
  const int max_dim = std::min(n, cfg.max_dim > 0 ? cfg.max_dim : std::max(4 * k + 40, 120));
  const int min_dim = std::min(n, k + 10);

  const Factorization f(a, b, cfg.shift);
  Lanczos lanczos(b, f, cfg.seed);
  lanczos.restart();

  std::vector<double> last_residuals;
  while (true) {
    const bool extended = lanczos.step();
    const int m = lanczos.completed();
    const bool full = m >= n;
    if (!extended && !full) {
      // Invariant subspace found early: continue from a fresh direction.
      if (!lanczos.restart()) throw Error(ErrorKind::NoConvergence, "could not extend Krylov basis");
    }
    const bool check = full || m == max_dim || (m >= min_dim && (m - min_dim) % 5 == 0);
    if (!check) continue;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(lanczos.projection(m));
    const Eigen::VectorXd& theta = eig.eigenvalues();
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return std::abs(theta[i]) > std::abs(theta[j]); });
    order.resize(k);
    const double beta = extended ? lanczos.trailing_beta(m) : 0.0;
    bool estimates_ok = true;
    for (int i : order) {
      const double estimate = std::abs(beta * eig.eigenvectors()(m - 1, i)) / std::abs(theta[i]);
      if (estimate > 1e-2 * cfg.tol) estimates_ok = false;
    }
    if (!estimates_ok && !full && m < max_dim) continue;

    std::vector<EigenPair> pairs;
    last_residuals.clear();
    bool converged = true;
    for (int i : order) {
      EigenPair p;
      p.value = cfg.shift + 1.0 / theta[i];
      // One step of inverse iteration purifies the Ritz vector.
      p.x = f.solve(b.matrix() * lanczos.combine(eig.eigenvectors().col(i)));
      p.x /= std::sqrt(p.x.dot(b.matrix() * p.x));
      Eigen::Index arg = 0;
      p.x.cwiseAbs().maxCoeff(&arg);
      if (p.x[arg] < 0.0) p.x = -p.x;
      const double res = eig_residual(a, b, p);
      last_residuals.push_back(res);
      // Past the rounding floor the relative residual cannot drop further.
      if (!(res <= cfg.tol) && !(backward_error(a, b, p) <= kBackwardTol)) converged = false;
      pairs.push_back(std::move(p));
    }
    if (converged) {
      std::stable_sort(pairs.begin(), pairs.end(),
                       [](const EigenPair& x, const EigenPair& y) { return x.value < y.value; });
      for (std::size_t i = 0; i < pairs.size(); ++i) pairs[i].index = static_cast<int>(i) + 1;
      return pairs;
    }
    if (full || m >= max_dim) {
      std::ostringstream msg;
      msg << "Krylov dimension " << m << " reached; residuals";
      for (double r : last_residuals) msg << ' ' << r;
      throw Error(ErrorKind::NoConvergence, msg.str());
    }
  }
}

}  // namespace biharm
