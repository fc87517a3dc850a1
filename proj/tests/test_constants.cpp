#include <doctest.h>

#include <cmath>

#include "biharm/constants.hpp"
#include "biharm/error.hpp"
#include "biharm/reference.hpp"

using namespace biharm;

TEST_CASE("spec validation") {
  CHECK_NOTHROW(ConstantsSpec{"90-60-30", 'S', 1}.validate());
  CHECK_THROWS_AS((ConstantsSpec{"isosceles", 'M', 0}.validate()), Error);
  CHECK_THROWS_AS((ConstantsSpec{"equilateral", 'X', 0}.validate()), Error);
  CHECK_THROWS_AS((ConstantsSpec{"equilateral", 'M', 2}.validate()), Error);
  const AfemConfig cfg = ConstantsSpec{"right-isosceles", 'V', 1}.afem_config(1000);
  CHECK(cfg.domain == "tri-right-isosceles");
  CHECK(cfg.form == MassForm::Gradient);
  CHECK(cfg.max_ndof == 1000);
}

TEST_CASE("interpolation constants") {
  CHECK(interpolation_constant(4.0) == doctest::Approx(0.5));
  CHECK_THROWS_AS(interpolation_constant(0.0), Error);
  CHECK_THROWS_AS(interpolation_constant(-1.0), Error);
  // The printed constants and the printed eigenvalues describe the same numbers.
  for (const ConstantReference& c : constant_references()) {
    const ReferenceEntry& m = reference_table(triangle_table_id(c.shape, c.s)).entry(4);
    const double printed = std::stod(std::string(c.value));
    CHECK(std::abs(interpolation_constant(m.to_double()) - printed) <= 1e-10 * printed);
  }
}

TEST_CASE("Morley space is nested in the vertex space") {
  for (const std::string& shape : triangle_shapes()) {
    for (int s = 0; s < 2; ++s) {
      const double v = principal_eigenvalue({shape, 'V', s}, 600).lambda_min;
      const double m = principal_eigenvalue({shape, 'M', s}, 600).lambda_min;
      CHECK(v > 0.0);
      CHECK(m >= v);
    }
  }
}

TEST_CASE("principal eigenvalues at a small budget") {
  for (char space : kTriangleSpaces) {
    const ConstantsSpec spec{"equilateral", space, 0};
    const ConstantsResult r = principal_eigenvalue(spec, 1500);
    const ReferenceEntry& ref =
        reference_table(triangle_table_id(spec.shape, 0)).entry(1 + static_cast<int>(kTriangleSpaces.find(space)));
    CHECK(r.lambda_min >= ref.to_double() * (1.0 - 1e-10));
    CHECK(relative_deviation(r.lambda_min, ref) <= 1e-4);
    CHECK_FALSE(r.records.empty());
  }
}
