#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "biharm/afem.hpp"
#include "biharm/bench.hpp"
#include "biharm/constants.hpp"
#include "biharm/error.hpp"
#include "biharm/parallel.hpp"
#include "biharm/plotdata.hpp"
#include "biharm/reference.hpp"

namespace {

using namespace biharm;

struct RunConfig {
  std::string domain = "square";
  std::string bc;
  int j = 1;
  double theta = 0.5;
  std::string mode = "adaptive";
  int init_red = 0;
  long max_ndof = 30000;
  int max_levels = 200;
  std::string form = "l2";
  double shift = 0.0;
  double tol = 1e-10;
  std::uint64_t seed = 1;
  std::string output;
  int threads = 0;

  AfemConfig afem() const {
    AfemConfig cfg;
    cfg.domain = domain;
    cfg.bc = bc.empty() ? default_boundary(domain) : parse_boundary_spec(bc);
    cfg.j = j;
    cfg.theta = theta;
    cfg.mode = parse_refine_mode(mode);
    cfg.init_red = init_red;
    cfg.max_ndof = max_ndof;
    cfg.max_levels = max_levels;
    if (form == "l2" || form == "0") {
      cfg.form = MassForm::L2;
    } else if (form == "gradient" || form == "1") {
      cfg.form = MassForm::Gradient;
    } else {
      throw Error(ErrorKind::InvalidConfig, "form must be l2 or gradient, got " + form);
    }
    cfg.solver.shift = shift;
    cfg.solver.tol = tol;
    cfg.solver.seed = seed;
    cfg.threads = threads > 0 ? threads : default_threads();
    cfg.validate();
    return cfg;
  }
};

// Stored lambda_j for catalog runs with their benchmark boundary conditions.
std::optional<double> known_reference(const AfemConfig& cfg) {
  auto lookup = [&](std::string_view id) -> std::optional<double> {
    const ReferenceTable& t = reference_table(id);
    for (const ReferenceEntry& e : t.entries) {
      if (e.j == cfg.j) return e.to_double();
    }
    return std::nullopt;
  };
  const BoundarySpec clamped = parse_boundary_spec("clamped");
  if (cfg.domain == "square" && cfg.bc == clamped) return lookup("square");
  if (cfg.domain == "lshape" && cfg.bc == clamped) return lookup("lshape");
  if (cfg.domain == "rect-hole" && cfg.bc == default_boundary("rect-hole")) return lookup("rect-hole");
  if (cfg.domain == "drum1" || cfg.domain == "drum2") {
    if (cfg.bc == parse_boundary_spec("simply-supported")) return lookup("drums-simply-supported");
    if (cfg.bc == clamped) return lookup(cfg.domain == "drum1" ? "drums-clamped-left" : "drums-clamped-right");
  }
  return std::nullopt;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw Error(ErrorKind::InvalidConfig, "cannot open " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

int cmd_solve(const RunConfig& rc, const std::string& plotdata, std::optional<double> lambda_ref, bool verbose) {
  const AfemConfig cfg = rc.afem();
  LevelObserver observer;
  if (verbose) {
    observer = [](const LevelRecord& r, const LevelState&) {
      std::fprintf(stderr, "level %d ndof %d lambda %.15g eta %.3e\n", r.level, r.ndof, r.lambda, r.eta);
    };
  }
  const std::vector<LevelRecord> records = afem_loop(cfg, observer);
  Output out(rc.output);
  write_records_csv(out.stream(), records);
  if (!plotdata.empty()) {
    if (!lambda_ref) lambda_ref = known_reference(cfg);
    if (!lambda_ref) throw Error(ErrorKind::InvalidConfig, "--plotdata needs --lambda-ref for this run");
    std::ofstream pd(plotdata);
    if (!pd) throw Error(ErrorKind::InvalidConfig, "cannot open " + plotdata);
    emit_plotdata(pd, records, *lambda_ref);
  }
  return 0;
}

std::string value_label(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

int cmd_study(const RunConfig& rc, const std::string& param, const std::vector<double>& values,
              const std::string& prefix, std::optional<double> lambda_ref, int window) {
  if (param != "theta" && param != "init-red" && param != "j") {
    throw Error(ErrorKind::InvalidConfig, "study parameter must be theta, init-red or j, got " + param);
  }
  std::vector<RunConfig> runs;
  for (double v : values) {
    RunConfig r = rc;
    if (param == "theta") r.theta = v;
    if (param == "init-red") r.init_red = static_cast<int>(v);
    if (param == "j") r.j = static_cast<int>(v);
    runs.push_back(r);
  }
  const int workers = std::min<int>(rc.threads > 0 ? rc.threads : default_threads(), runs.size());
  std::vector<AfemConfig> cfgs;
  for (RunConfig& r : runs) {
    r.threads = std::max(1, (rc.threads > 0 ? rc.threads : default_threads()) / std::max(1, workers));
    cfgs.push_back(r.afem());
  }
  std::vector<std::vector<LevelRecord>> results(runs.size());
  parallel_for(static_cast<int>(runs.size()), workers, [&](int i) { results[i] = afem_loop(cfgs[i]); });

  Output out(rc.output);
  std::ostream& os = out.stream();
  os << param << ",levels,ndof,lambda,eta,rate\n";
  os.precision(17);
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const std::vector<LevelRecord>& recs = results[i];
    std::optional<double> ref = lambda_ref ? lambda_ref : known_reference(cfgs[i]);
    double rate = std::nan("");
    if (ref) {
      try {
        rate = rate_estimate(recs, *ref, window);
      } catch (const Error&) {
      }
    }
    os << value_label(values[i]) << ',' << recs.size() << ',' << recs.back().ndof << ',' << recs.back().lambda << ','
       << recs.back().eta << ',' << rate << '\n';
    if (!prefix.empty()) {
      std::ofstream f(prefix + "-" + param + "-" + value_label(values[i]) + ".csv");
      if (!f) throw Error(ErrorKind::InvalidConfig, "cannot write under prefix " + prefix);
      write_records_csv(f, recs);
    }
  }
  return 0;
}

int cmd_constants(const RunConfig& rc, long max_ndof) {
  struct Row {
    ConstantsSpec spec;
    double lambda = 0.0;
  };
  std::vector<Row> rows;
  for (int s = 0; s < 2; ++s) {
    for (const std::string& shape : triangle_shapes()) {
      for (char space : kTriangleSpaces) rows.push_back({ConstantsSpec{shape, space, s}});
    }
  }
  const int threads = rc.threads > 0 ? rc.threads : default_threads();
  parallel_for(static_cast<int>(rows.size()), threads,
               [&](int i) { rows[i].lambda = principal_eigenvalue(rows[i].spec, max_ndof, 1).lambda_min; });

  Output out(rc.output);
  std::ostream& os = out.stream();
  os << "s,shape,space,lambda,reference,rel_dev,constant\n";
  for (const Row& r : rows) {
    const ReferenceEntry& ref =
        reference_table(triangle_table_id(r.spec.shape, r.spec.s)).entry(1 + static_cast<int>(kTriangleSpaces.find(r.spec.space)));
    char line[256];
    std::snprintf(line, sizeof(line), "%d,%s,%c,%.15g,%.*s,%.3e,%.12g\n", r.spec.s, r.spec.shape.c_str(), r.spec.space,
                  r.lambda, static_cast<int>(ref.value.size()), ref.value.data(), relative_deviation(r.lambda, ref),
                  interpolation_constant(r.lambda));
    os << line;
  }
  return 0;
}

int cmd_refcheck(const RunConfig& rc, const std::vector<int>& only) {
  BenchOptions options;
  options.threads = rc.threads > 0 ? rc.threads : default_threads();
  const std::vector<CriterionResult> results = run_benchmarks(only, options);
  bool all = true;
  for (const CriterionResult& r : results) {
    std::printf("[%s] %d %s: %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str());
    all = all && r.pass;
  }
  return all ? 0 : 2;
}

int cmd_tables(const std::string& benchmark, std::optional<int> j) {
  if (!benchmark.empty()) {
    const ReferenceTable& t = reference_table(benchmark);
    if (j) {
      std::cout << t.entry(*j).value << '\n';
      return 0;
    }
    for (const ReferenceEntry& e : t.entries) std::cout << e.j << ' ' << e.value << '\n';
    return 0;
  }
  for (const ReferenceTable& t : reference_tables()) {
    std::cout << "# " << t.id << ": " << t.caption << '\n';
    for (const ReferenceEntry& e : t.entries) std::cout << e.j << ' ' << e.value << '\n';
  }
  for (const ConstantReference& c : constant_references()) {
    std::cout << "# constant " << c.shape << " s=" << c.s << ' ' << c.value << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive Argyris FEM for biharmonic eigenvalue problems"};
  app.set_config("--config", "", "flat key = value file; flags override it");
  app.require_subcommand(1);

  RunConfig rc;
  app.add_option("--domain", rc.domain, "square, lshape, drum1, drum2, rect-hole, tri-<shape>");
  app.add_option("--bc", rc.bc, "clamped, simply-supported, free, V, M or outer=..,inner=..");
  app.add_option("--j", rc.j, "tracked eigenvalue index");
  app.add_option("--theta", rc.theta, "Doerfler bulk parameter");
  app.add_option("--mode", rc.mode, "adaptive or uniform-red");
  app.add_option("--init-red", rc.init_red, "initial red refinements");
  app.add_option("--max-ndof", rc.max_ndof, "ndof budget");
  app.add_option("--max-levels", rc.max_levels);
  app.add_option("--form", rc.form, "l2 or gradient right-hand side");
  app.add_option("--shift", rc.shift, "initial shift");
  app.add_option("--tol", rc.tol, "eigensolver residual tolerance");
  app.add_option("--seed", rc.seed);
  app.add_option("--output,-o", rc.output, "output file (default stdout)");
  app.add_option("--threads", rc.threads, "worker threads (default BIHARM_THREADS)");

  CLI::App* solve = app.add_subcommand("solve", "one adaptive or uniform run, LevelRecord CSV")->fallthrough();
  std::string plotdata;
  std::optional<double> lambda_ref;
  bool verbose = false;
  solve->add_option("--plotdata", plotdata, "also write log-log plot data");
  solve->add_option("--lambda-ref", lambda_ref);
  solve->add_flag("--verbose,-v", verbose);

  CLI::App* study = app.add_subcommand("study", "family of runs over one parameter")->fallthrough();
  std::string param = "theta";
  std::vector<double> values{0.1, 0.3, 0.5};
  std::string prefix;
  int window = 4;
  study->add_option("--param", param, "theta, init-red or j");
  study->add_option("--values", values)->delimiter(',');
  study->add_option("--prefix", prefix, "write per-run CSVs to <prefix>-<param>-<value>.csv");
  study->add_option("--lambda-ref", lambda_ref);
  study->add_option("--window", window, "levels used by the rate fit");

  CLI::App* constants = app.add_subcommand("constants", "principal eigenvalues on the reference triangles")->fallthrough();
  long const_ndof = 3000;
  constants->add_option("--budget", const_ndof, "ndof budget per triangle run");

  CLI::App* refcheck = app.add_subcommand("refcheck", "rerun the benchmarks against the reference tables")->fallthrough();
  std::vector<int> only;
  refcheck->add_option("--only", only, "criterion ids")->delimiter(',');

  CLI::App* tables = app.add_subcommand("tables", "print embedded reference values");
  std::string benchmark;
  std::optional<int> table_j;
  tables->add_option("--benchmark", benchmark);
  tables->add_option("--j", table_j);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*solve) return cmd_solve(rc, plotdata, lambda_ref, verbose);
    if (*study) return cmd_study(rc, param, values, prefix, lambda_ref, window);
    if (*constants) return cmd_constants(rc, const_ndof);
    if (*refcheck) return cmd_refcheck(rc, only);
    if (*tables) return cmd_tables(benchmark, table_j);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
