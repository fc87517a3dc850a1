#pragma once

#include <span>
#include <string>
#include <vector>

namespace biharm {

/// Outcome of one reproduction benchmark.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  /// One-line summary of the measured quantities.
  std::string detail;
};

struct BenchOptions {
  int threads = 1;
};

/// Benchmarks 1..6: unit square (lambda_1 and upper bounds for lambda_2..10),
/// L-shape rates, isospectral drums, rectangle with a hole, triangle
/// constants. Empty `ids` runs all.
std::vector<CriterionResult> run_benchmarks(std::span<const int> ids, const BenchOptions& options = {});

/// Worker count from BIHARM_THREADS (default: hardware concurrency).
int default_threads();

}  // namespace biharm
