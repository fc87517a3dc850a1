#include <doctest.h>

#include <cmath>
#include <sstream>

#include "biharm/afem.hpp"
#include "biharm/error.hpp"
#include "biharm/reference.hpp"
#include "props.hpp"

using namespace biharm;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidSpec;
}

std::vector<LevelRecord> synthetic(double ref, double c, double rate, int n) {
  std::vector<LevelRecord> out;
  for (int l = 0; l < n; ++l) {
    LevelRecord r;
    r.level = l;
    r.ndof = 100 << l;
    r.lambda = ref + c * std::pow(r.ndof, -rate);
    out.push_back(r);
  }
  return out;
}

}  // namespace

TEST_CASE("doerfler_mark examples") {
  CHECK(doerfler_mark(std::vector<double>{9, 4, 1}, 0.5) == std::vector<int>{0});
  CHECK(doerfler_mark(std::vector<double>{2, 2, 2, 2}, 0.5) == std::vector<int>{0, 1});
  CHECK(doerfler_mark(std::vector<double>{1, 5, 0, 5}, 0.6) == std::vector<int>{1, 3});
  CHECK(doerfler_mark(std::vector<double>{0, 0, 3}, 0.99) == std::vector<int>{2});
  CHECK(kind_of([] { doerfler_mark(std::vector<double>{0, 0}, 0.5); }) == ErrorKind::AllZeroEstimator);
  CHECK(kind_of([] { doerfler_mark(std::vector<double>{}, 0.5); }) == ErrorKind::AllZeroEstimator);
  CHECK(kind_of([] { doerfler_mark(std::vector<double>{1}, 0.0); }) == ErrorKind::InvalidConfig);
  CHECK(kind_of([] { doerfler_mark(std::vector<double>{1}, 1.5); }) == ErrorKind::InvalidConfig);
}

TEST_CASE("doerfler_mark has minimal cardinality") {
  const props::Check c = props::doerfler_minimal();
  INFO(c.detail);
  CHECK(c.pass);
}

TEST_CASE("rate_estimate") {
  CHECK(rate_estimate(synthetic(10.0, 5.0, 2.0, 6), 10.0) == doctest::Approx(2.0));
  CHECK(rate_estimate(synthetic(10.0, 5.0, 0.54, 6), 10.0, 3) == doctest::Approx(0.54));
  const auto few = synthetic(1.0, 1.0, 1.0, 1);
  CHECK(kind_of([&] { rate_estimate(few, 1.0); }) == ErrorKind::InsufficientData);
  auto below = synthetic(1.0, 1.0, 1.0, 4);
  below[2].lambda = 0.5;
  try {
    rate_estimate(below, 1.0);
    FAIL("expected NonPositiveError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonPositiveError);
    CHECK(std::string(e.what()).find('2') != std::string::npos);
  }
}

TEST_CASE("config validation") {
  AfemConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.theta = 1.0;
  CHECK(kind_of([&] { cfg.validate(); }) == ErrorKind::InvalidConfig);
  cfg.theta = 0.5;
  cfg.j = 0;
  CHECK(kind_of([&] { cfg.validate(); }) == ErrorKind::InvalidConfig);
  cfg.j = 1;
  cfg.domain = "nosuch";
  CHECK(kind_of([&] { afem_loop(cfg); }) == ErrorKind::UnknownDomain);
  CHECK(parse_refine_mode("uniform-red") == RefineMode::UniformRed);
  CHECK(to_string(RefineMode::Adaptive) == "adaptive");
  CHECK(kind_of([] { parse_refine_mode("green"); }) == ErrorKind::InvalidConfig);
}

TEST_CASE("square run stays above the reference") {
  AfemConfig cfg;
  cfg.max_ndof = 4000;
  std::vector<int> observed;
  const std::vector<LevelRecord> recs =
      afem_loop(cfg, [&](const LevelRecord& r, const LevelState& s) {
        observed.push_back(r.level);
        CHECK(static_cast<int>(s.report.eta2.size()) == s.mesh.num_tris());
        CHECK(static_cast<int>(s.marked.size()) == r.marked);
      });
  const double ref = reference_table("square").entry(1).to_double();
  REQUIRE(recs.size() >= 5);
  CHECK(observed.size() == recs.size());
  for (std::size_t l = 0; l < recs.size(); ++l) {
    CHECK(recs[l].lambda >= ref);
    CHECK(recs[l].ndof <= (l == 0 ? recs[l].ndof : cfg.max_ndof));
    CHECK(recs[l].lambdas.size() == static_cast<std::size_t>(std::min(10, recs[l].ndof)));
  }
  CHECK(recs.back().lambda == doctest::Approx(ref).epsilon(1e-5));
}

TEST_CASE("L-shape refinement concentrates at the reentrant corner") {
  AfemConfig cfg;
  cfg.domain = "lshape";
  cfg.max_levels = 16;
  cfg.max_ndof = 1000000;
  double share = 0.0;
  afem_loop(cfg, [&](const LevelRecord& r, const LevelState& s) {
    if (r.level != 15) return;
    int close = 0;
    for (int t = 0; t < s.mesh.num_tris(); ++t) {
      const Point2 c = s.mesh.centroid(t);
      if (std::hypot(c.x, c.y) < 0.1) ++close;
    }
    share = static_cast<double>(close) / s.mesh.num_tris();
  });
  CHECK(share >= 0.3);
}

TEST_CASE("uniform mode refines every triangle") {
  AfemConfig cfg;
  cfg.domain = "lshape";
  cfg.mode = RefineMode::UniformRed;
  cfg.max_levels = 3;
  const std::vector<LevelRecord> recs = afem_loop(cfg);
  REQUIRE(recs.size() == 3);
  CHECK(recs[1].ntri == 4 * recs[0].ntri);
  CHECK(recs[2].ntri == 16 * recs[0].ntri);
  CHECK(recs[0].marked == 0);
}

TEST_CASE("determinism") {
  const props::Check c = props::pipeline_determinism();
  INFO(c.detail);
  CHECK(c.pass);
}

TEST_CASE("records CSV round trip") {
  AfemConfig cfg;
  cfg.max_ndof = 600;
  const std::vector<LevelRecord> recs = afem_loop(cfg);
  std::stringstream io;
  write_records_csv(io, recs);
  CHECK(io.str().rfind("level,ndof,ntri,lambda,eta,marked,seconds\n", 0) == 0);
  const std::vector<LevelRecord> back = read_records_csv(io);
  REQUIRE(back.size() == recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    CHECK(back[i].level == recs[i].level);
    CHECK(back[i].ndof == recs[i].ndof);
    CHECK(back[i].ntri == recs[i].ntri);
    CHECK(back[i].lambda == recs[i].lambda);
    CHECK(back[i].eta == recs[i].eta);
    CHECK(back[i].marked == recs[i].marked);
  }
  std::stringstream bad("level,ndof\n1,2\n");
  CHECK(kind_of([&] { read_records_csv(bad); }) == ErrorKind::ParseError);
}
