#pragma once

#include <iosfwd>
#include <span>

#include "biharm/afem.hpp"

namespace biharm {

struct PlotSummary {
  int points = 0;
  /// Levels with lambda <= lambda_ref, left out of the error series.
  int skipped = 0;
  /// Decay rate of the error series over its last `window` points (NaN when
  /// fewer than three remain).
  double slope = 0.0;
};

/// Plain-text log-log data: "# error" block of (ndof, lambda - lambda_ref),
/// "# estimator" block of (ndof, eta^2), and a "# slope" line.
PlotSummary emit_plotdata(std::ostream& out, std::span<const LevelRecord> records, double lambda_ref,
                          int window = 5);

}  // namespace biharm
