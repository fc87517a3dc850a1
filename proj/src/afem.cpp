#include "biharm/afem.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "biharm/error.hpp"

namespace biharm {

RefineMode parse_refine_mode(std::string_view text) {
  if (text == "adaptive") return RefineMode::Adaptive;
  if (text == "uniform-red" || text == "uniform") return RefineMode::UniformRed;
  throw Error(ErrorKind::InvalidConfig, "unknown mode '" + std::string(text) + "'");
}

std::string_view to_string(RefineMode mode) { return mode == RefineMode::Adaptive ? "adaptive" : "uniform-red"; }

void AfemConfig::validate() const {
  if (!(theta > 0.0 && theta < 1.0)) throw Error(ErrorKind::InvalidConfig, "theta must lie in (0,1)");
  if (j < 1) throw Error(ErrorKind::InvalidConfig, "j must be at least 1");
  if (init_red < 0) throw Error(ErrorKind::InvalidConfig, "init-red must be nonnegative");
  if (max_ndof < 1 || max_levels < 1) throw Error(ErrorKind::InvalidConfig, "empty stopping rule");
  if (threads < 1) throw Error(ErrorKind::InvalidConfig, "threads must be positive");
  if (!(solver.tol > 0.0)) throw Error(ErrorKind::InvalidConfig, "tol must be positive");
}

std::vector<int> doerfler_mark(std::span<const double> eta2, double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw Error(ErrorKind::InvalidConfig, "theta must lie in (0,1)");
  double total = 0.0;
  for (double v : eta2) {
    if (!(v >= 0.0)) throw Error(ErrorKind::InvalidSpec, "negative or non-finite indicator");
    total += v;
  }
  if (!(total > 0.0)) throw Error(ErrorKind::AllZeroEstimator, "all indicators vanish");
  std::vector<int> order(eta2.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return eta2[a] > eta2[b]; });
  const double goal = theta * total;
  double sum = 0.0;
  std::vector<int> marked;
  for (int t : order) {
    marked.push_back(t);
    sum += eta2[t];
    if (sum >= goal) break;
  }
  std::sort(marked.begin(), marked.end());
  return marked;
}

namespace {

std::vector<EigenPair> solve_level(const SparseSymMatrix& a, const SparseSymMatrix& b, SolverConfig cfg) {
  try {
    return solve_eigs(a, b, cfg);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SingularShift) throw;
    cfg.shift += 1e-8 * (1.0 + std::abs(cfg.shift));
    return solve_eigs(a, b, cfg);
  }
}

}  // namespace

std::vector<LevelRecord> afem_loop(const AfemConfig& cfg, const LevelObserver& observer) {
  cfg.validate();
  Triangulation mesh = domain_catalog(cfg.domain, cfg.bc).mesh;
  for (int i = 0; i < cfg.init_red; ++i) mesh = red_refine(mesh);

  std::vector<LevelRecord> records;
  for (int level = 0; level < cfg.max_levels; ++level) {
    const auto start = std::chrono::steady_clock::now();
    try {
      const DiscreteSpace space = build_space(mesh, cfg.bc, cfg.threads);
      const int ndof = space.reduction.n_free();
      if (level > 0 && ndof > cfg.max_ndof) break;
      if (ndof < cfg.j) {
        throw Error(ErrorKind::InvalidConfig, "space of dimension " + std::to_string(ndof) + " has no eigenpair " +
                                                  std::to_string(cfg.j));
      }
      const SparseSymMatrix a =
          reduce(assemble_stiffness(mesh, space.dofs, space.bases, cfg.threads), space.reduction);
      const SparseSymMatrix b =
          reduce(assemble_mass(mesh, space.dofs, space.bases, cfg.form, cfg.threads), space.reduction);
      SolverConfig solver = cfg.solver;
      solver.count = std::min(std::max(cfg.j + 3, 10), ndof);
      const std::vector<EigenPair> pairs = solve_level(a, b, solver);
      // Eigenvalues are re-evaluated as Rayleigh quotients of the discrete
      // eigenfunctions, which removes most of the rounding in the matrices.
      std::vector<double> quotients;
      Eigen::VectorXd u;
      for (const EigenPair& p : pairs) {
        const Eigen::VectorXd full = space.reduction.expand(p.x);
        quotients.push_back(
            rayleigh_quotient(mesh, space.bases, std::span<const double>(full.data(), full.size()), cfg.form));
        if (p.index == cfg.j) u = full;
      }
      const EigenPair& pair = pairs[cfg.j - 1];
      const double lambda = quotients[cfg.j - 1];
      const EstimatorReport report = local_estimator(
          mesh, space.dofs, space.bases, std::span<const double>(u.data(), u.size()), lambda, cfg.form, cfg.threads);

      LevelRecord rec;
      rec.level = level;
      rec.ndof = ndof;
      rec.ntri = mesh.num_tris();
      rec.lambda = lambda;
      rec.eta = estimator_total(report);
      rec.lambdas = quotients;

      std::vector<int> marked;
      bool stop = false;
      if (cfg.mode == RefineMode::Adaptive) {
        try {
          marked = doerfler_mark(report.eta2, cfg.theta);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::AllZeroEstimator) throw;
          stop = true;
        }
      }
      rec.marked = static_cast<int>(marked.size());
      rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      records.push_back(rec);
      if (observer) observer(records.back(), LevelState{mesh, space, pair, report, marked});
      if (stop) break;
      mesh = cfg.mode == RefineMode::Adaptive ? nvb_refine(mesh, marked) : red_refine(mesh);
    } catch (const Error& e) {
      throw Error(e.kind(), e.detail() + " (level " + std::to_string(level) + ")");
    }
  }
  return records;
}

double rate_estimate(std::span<const LevelRecord> records, double lambda_ref, int window) {
  if (window > 0 && static_cast<std::size_t>(window) < records.size()) {
    records = records.subspan(records.size() - window);
  }
  if (records.size() < 3) throw Error(ErrorKind::InsufficientData, "at least three levels required");
  std::vector<int> excluded;
  for (const LevelRecord& r : records) {
    if (!(r.lambda > lambda_ref)) excluded.push_back(r.level);
  }
  if (!excluded.empty()) {
    std::ostringstream msg;
    msg << "lambda <= lambda_ref at level(s)";
    for (int l : excluded) msg << ' ' << l;
    throw Error(ErrorKind::NonPositiveError, msg.str());
  }
  const double n = static_cast<double>(records.size());
  double sx = 0.0;
  double sy = 0.0;
  for (const LevelRecord& r : records) {
    sx += std::log(static_cast<double>(r.ndof));
    sy += std::log(r.lambda - lambda_ref);
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const LevelRecord& r : records) {
    const double dx = std::log(static_cast<double>(r.ndof)) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(r.lambda - lambda_ref) - my);
  }
  if (!(sxx > 0.0)) throw Error(ErrorKind::InsufficientData, "ndof does not vary");
  return -sxy / sxx;
}

void write_records_csv(std::ostream& out, std::span<const LevelRecord> records) {
  out << "level,ndof,ntri,lambda,eta,marked,seconds\n";
  const auto old = out.precision(17);
  for (const LevelRecord& r : records) {
    out << r.level << ',' << r.ndof << ',' << r.ntri << ',' << r.lambda << ',' << r.eta << ',' << r.marked << ','
        << r.seconds << '\n';
  }
  out.precision(old);
}

std::vector<LevelRecord> read_records_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "level,ndof,ntri,lambda,eta,marked,seconds") {
    throw Error(ErrorKind::ParseError, "missing level record header");
  }
  std::vector<LevelRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    LevelRecord r;
    if (!(ss >> r.level >> r.ndof >> r.ntri >> r.lambda >> r.eta >> r.marked >> r.seconds)) {
      throw Error(ErrorKind::ParseError, "bad level record '" + line + "'");
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace biharm
