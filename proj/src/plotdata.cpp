#include "biharm/plotdata.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <vector>

#include "biharm/error.hpp"

namespace biharm {

PlotSummary emit_plotdata(std::ostream& out, std::span<const LevelRecord> records, double lambda_ref, int window) {
  if (records.empty()) throw Error(ErrorKind::InsufficientData, "no records");
  PlotSummary summary;
  std::vector<LevelRecord> kept;
  const auto old = out.precision(17);
  out << "# error: ndof lambda-lambda_ref\n";
  for (const LevelRecord& r : records) {
    if (!(r.lambda > lambda_ref)) {
      ++summary.skipped;
      continue;
    }
    kept.push_back(r);
    out << r.ndof << ' ' << r.lambda - lambda_ref << '\n';
  }
  out << "\n\n# estimator: ndof eta^2\n";
  for (const LevelRecord& r : records) out << r.ndof << ' ' << r.eta * r.eta << '\n';
  summary.points = static_cast<int>(kept.size());
  summary.slope = kept.size() >= 3 ? rate_estimate(kept, lambda_ref, window) : std::numeric_limits<double>::quiet_NaN();
  out << "\n\n# slope " << summary.slope << " over last " << std::min<int>(window, summary.points)
      << " points; skipped " << summary.skipped << '\n';
  out.precision(old);
  return summary;
}

}  // namespace biharm
