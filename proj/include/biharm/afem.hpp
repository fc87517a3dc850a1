#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "biharm/assembly.hpp"
#include "biharm/domains.hpp"
#include "biharm/eigensolve.hpp"
#include "biharm/estimator.hpp"

namespace biharm {

enum class RefineMode { Adaptive, UniformRed };

RefineMode parse_refine_mode(std::string_view text);
std::string_view to_string(RefineMode mode);

struct AfemConfig {
  std::string domain = "square";
  BoundarySpec bc = parse_boundary_spec("clamped");
  /// Index of the tracked eigenpair (1 = smallest).
  int j = 1;
  double theta = 0.5;
  RefineMode mode = RefineMode::Adaptive;
  /// Red refinements of the catalog mesh before the first level.
  int init_red = 0;
  /// A level is only solved while its reduced dimension stays within this
  /// budget (level 0 is always solved).
  long max_ndof = 30000;
  int max_levels = 200;
  MassForm form = MassForm::L2;
  SolverConfig solver;
  int threads = 1;

  /// Throws InvalidConfig.
  void validate() const;
};

struct LevelRecord {
  int level = 0;
  int ndof = 0;
  int ntri = 0;
  double lambda = 0.0;
  double eta = 0.0;
  int marked = 0;
  double seconds = 0.0;
  /// All computed eigenvalues of the level, ascending.
  std::vector<double> lambdas;
};

/// Everything computed on one level, passed to an optional observer.
struct LevelState {
  const Triangulation& mesh;
  const DiscreteSpace& space;
  const EigenPair& pair;
  const EstimatorReport& report;
  const std::vector<int>& marked;
};
using LevelObserver = std::function<void(const LevelRecord&, const LevelState&)>;

/// Shortest prefix of the triangles sorted by descending eta2 (ties by
/// index) whose sum reaches theta * sum(eta2). Returned in ascending index
/// order.
std::vector<int> doerfler_mark(std::span<const double> eta2, double theta);

/// solve -> estimate -> mark -> refine until the ndof budget, the level limit
/// or a vanishing estimator stops the loop.
std::vector<LevelRecord> afem_loop(const AfemConfig& cfg, const LevelObserver& observer = {});

/// Negated least-squares slope of log(lambda - lambda_ref) over log(ndof)
/// for the last `window` records (all when window <= 0).
double rate_estimate(std::span<const LevelRecord> records, double lambda_ref, int window = 0);

/// CSV with header level,ndof,ntri,lambda,eta,marked,seconds.
void write_records_csv(std::ostream& out, std::span<const LevelRecord> records);
std::vector<LevelRecord> read_records_csv(std::istream& in);

}  // namespace biharm
