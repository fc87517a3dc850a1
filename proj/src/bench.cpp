#include "biharm/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "biharm/afem.hpp"
#include "biharm/constants.hpp"
#include "biharm/error.hpp"
#include "biharm/reference.hpp"

namespace biharm {

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

AfemConfig config(std::string domain, std::string_view bc, int j, long max_ndof, const BenchOptions& o) {
  AfemConfig cfg;
  cfg.domain = std::move(domain);
  cfg.bc = parse_boundary_spec(bc);
  cfg.j = j;
  cfg.max_ndof = max_ndof;
  cfg.threads = o.threads;
  return cfg;
}

std::vector<CriterionResult> square(const BenchOptions& o) {
  const ReferenceTable& table = reference_table("square");
  const double ref = table.entry(1).to_double();
  const AfemConfig cfg = config("square", "clamped", 1, 30000, o);
  const auto start = std::chrono::steady_clock::now();
  const std::vector<LevelRecord> recs = afem_loop(cfg);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  CriterionResult c1{1, "square lambda_1", false, ""};
  bool bound = true;
  for (const LevelRecord& r : recs) bound = bound && r.lambda >= ref - 10.0 * cfg.solver.tol * ref;
  const double last = recs.back().lambda;
  c1.pass = bound && last >= ref && last <= ref * (1.0 + 1e-6) && seconds <= 300.0;
  c1.detail = fmt("lambda=%.13f ref=%.13f rel=%.2e ndof=%d levels=%zu upper-bound-all-levels=%s time=%.1fs", last, ref,
                  rel(last, ref), recs.back().ndof, recs.size(), bound ? "yes" : "no", seconds);

  CriterionResult c2{2, "square lambda_2..lambda_10 upper bounds", true, ""};
  const std::vector<double>& l = recs.back().lambdas;
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 2; k <= 10; ++k) {
    const double rk = table.entry(k).to_double();
    const double margin = (l[k - 1] - rk) / ref;
    worst = std::min(worst, margin);
    if (!(l[k - 1] >= rk - 1e-6 * ref)) c2.pass = false;
  }
  const double pair = rel(l[1], l[2]);
  c2.pass = c2.pass && pair <= 1e-6;
  c2.detail = fmt("min (lambda_k - ref_k)/lambda_ref=%.2e |lambda_2-lambda_3|/lambda_2=%.2e", worst, pair);
  return {c1, c2};
}

CriterionResult lshape(const BenchOptions& o) {
  const double ref = reference_table("lshape").entry(1).to_double();
  CriterionResult c{3, "L-shape rates", false, ""};
  AfemConfig uni = config("lshape", "clamped", 1, 200000, o);
  uni.mode = RefineMode::UniformRed;
  uni.max_levels = 7;
  const std::vector<LevelRecord> u = afem_loop(uni);
  const double uniform_rate = rate_estimate(u, ref, 4);

  AfemConfig ada = config("lshape", "clamped", 1, 100000, o);
  const std::vector<LevelRecord> a = afem_loop(ada);
  double adaptive_rate = std::nan("");
  try {
    adaptive_rate = rate_estimate(a, ref, 5);
  } catch (const Error&) {
  }
  const double last = a.back().lambda;
  c.pass = u.size() >= 6 && uniform_rate >= 0.39 && uniform_rate <= 0.69 && adaptive_rate >= 3.0 &&
           rel(last, ref) <= 1e-6;
  c.detail = fmt("uniform rate=%.3f (%zu levels) adaptive rate=%.3f (last 5 of %zu levels, ndof<=%d) lambda=%.13f rel=%.2e",
                 uniform_rate, u.size() - 1, adaptive_rate, a.size(), a.back().ndof, last, rel(last, ref));
  return c;
}

CriterionResult drums(const BenchOptions& o) {
  CriterionResult c{4, "isospectral drums", false, ""};
  const double ss = reference_table("drums-simply-supported").entry(1).to_double();
  const double left = reference_table("drums-clamped-left").entry(1).to_double();
  const double right = reference_table("drums-clamped-right").entry(1).to_double();
  const double nine = 25.0 * std::pow(std::numbers::pi, 4) / 16.0;
  constexpr long budget = 20000;
  const double s1 = afem_loop(config("drum1", "simply-supported", 1, budget, o)).back().lambda;
  const double s2 = afem_loop(config("drum2", "simply-supported", 1, budget, o)).back().lambda;
  const double l9 = afem_loop(config("drum1", "simply-supported", 9, budget, o)).back().lambda;
  const double c1 = afem_loop(config("drum1", "clamped", 1, budget, o)).back().lambda;
  const double c2 = afem_loop(config("drum2", "clamped", 1, budget, o)).back().lambda;
  c.pass = rel(s1, s2) <= 1e-6 && rel(s1, ss) <= 1e-5 && rel(s2, ss) <= 1e-5 && rel(l9, nine) <= 1e-6 &&
           std::abs(c1 - c2) / std::min(c1, c2) > 0.10 && rel(c1, left) <= 1e-5 && rel(c2, right) <= 1e-5;
  c.detail = fmt("ss: %.10f %.10f (pair %.1e, ref %.1e/%.1e) lambda_9=%.10f (%.1e) clamped: %.10f (%.1e) %.10f (%.1e)", s1, s2,
                 rel(s1, s2), rel(s1, ss), rel(s2, ss), l9, rel(l9, nine), c1, rel(c1, left), c2, rel(c2, right));
  return c;
}

CriterionResult rect_hole(const BenchOptions& o) {
  CriterionResult c{5, "rectangle with a hole", true, ""};
  const double ref = reference_table("rect-hole").entry(1).to_double();
  std::vector<double> values;
  std::ostringstream detail;
  for (double theta : {0.1, 0.3, 0.5}) {
    AfemConfig cfg = config("rect-hole", "outer=free,inner=clamped", 1, 20000, o);
    cfg.theta = theta;
    const double l = afem_loop(cfg).back().lambda;
    values.push_back(l);
    c.pass = c.pass && rel(l, ref) <= 1e-6;
    detail << fmt("theta=%.1f lambda=%.12f rel=%.2e; ", theta, l, rel(l, ref));
  }
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  c.pass = c.pass && (*hi - *lo) / *lo <= 1e-6;
  detail << fmt("spread=%.2e", (*hi - *lo) / *lo);
  c.detail = detail.str();
  return c;
}

CriterionResult triangle_constants(const BenchOptions& o) {
  CriterionResult c{6, "triangle constants", true, ""};
  int ok = 0;
  double worst = 0.0;
  std::string worst_name;
  double lambda_eq_m0 = 0.0;
  double lambda_ri_m1 = 0.0;
  for (int s = 0; s < 2; ++s) {
    for (const std::string& shape : triangle_shapes()) {
      for (int k = 0; k < 4; ++k) {
        const ConstantsSpec spec{shape, kTriangleSpaces[k], s};
        const double l = principal_eigenvalue(spec, 3000, o.threads).lambda_min;
        const double d = relative_deviation(l, reference_table(triangle_table_id(shape, s)).entry(k + 1));
        if (d <= 1e-5) ++ok;
        if (d > worst) {
          worst = d;
          worst_name = fmt("%s/%c/s%d", shape.c_str(), spec.space, s);
        }
        if (s == 0 && shape == "equilateral" && spec.space == 'M') lambda_eq_m0 = l;
        if (s == 1 && shape == "right-isosceles" && spec.space == 'M') lambda_ri_m1 = l;
      }
    }
  }
  const double c0 = interpolation_constant(lambda_eq_m0);
  const double c1 = interpolation_constant(lambda_ri_m1);
  const double c0_ref = 0.073500054756;
  const double c1_ref = 0.165225444731;
  c.pass = ok == 24 && rel(c0, c0_ref) <= 1e-6 && rel(c1, c1_ref) <= 1e-6;
  c.detail = fmt("%d/24 entries within 1e-5 (worst %s rel=%.2e) C0=%.12f (rel %.1e) C1=%.12f (rel %.1e)", ok,
                 worst_name.c_str(), worst, c0, rel(c0, c0_ref), c1, rel(c1, c1_ref));
  return c;
}

}  // namespace

int default_threads() {
  if (const char* env = std::getenv("BIHARM_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<CriterionResult> run_benchmarks(std::span<const int> ids, const BenchOptions& options) {
  auto wanted = [&](int id) { return ids.empty() || std::find(ids.begin(), ids.end(), id) != ids.end(); };
  auto guarded = [&](int id, const char* name, auto&& fn) {
    try {
      return fn();
    } catch (const std::exception& e) {
      return std::vector<CriterionResult>{{id, name, false, std::string("error: ") + e.what()}};
    }
  };
  std::vector<CriterionResult> out;
  auto add = [&](std::vector<CriterionResult> rs) {
    for (auto& r : rs) {
      if (wanted(r.id)) out.push_back(std::move(r));
    }
  };
  if (wanted(1) || wanted(2)) add(guarded(1, "square", [&] { return square(options); }));
  if (wanted(3)) add(guarded(3, "L-shape rates", [&] { return std::vector{lshape(options)}; }));
  if (wanted(4)) add(guarded(4, "isospectral drums", [&] { return std::vector{drums(options)}; }));
  if (wanted(5)) add(guarded(5, "rectangle with a hole", [&] { return std::vector{rect_hole(options)}; }));
  if (wanted(6)) add(guarded(6, "triangle constants", [&] { return std::vector{triangle_constants(options)}; }));
  return out;
}

}  // namespace biharm
