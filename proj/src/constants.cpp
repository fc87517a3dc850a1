#include "biharm/constants.hpp"

#include <algorithm>
#include <cmath>

#include "biharm/error.hpp"
#include "biharm/reference.hpp"

namespace biharm {

void ConstantsSpec::validate() const {
  const auto& shapes = triangle_shapes();
  if (std::find(shapes.begin(), shapes.end(), shape) == shapes.end()) {
    throw Error(ErrorKind::UnknownDomain, "tri-" + shape);
  }
  if (kTriangleSpaces.find(space) == std::string_view::npos) {
    throw Error(ErrorKind::InvalidConfig, std::string("unknown space '") + space + "'");
  }
  if (s != 0 && s != 1) throw Error(ErrorKind::InvalidConfig, "s must be 0 or 1");
}

AfemConfig ConstantsSpec::afem_config(long max_ndof, int threads) const {
  validate();
  AfemConfig cfg;
  cfg.domain = "tri-" + shape;
  switch (space) {
    case 'C': cfg.bc = parse_boundary_spec("clamped"); break;
    case 'S': cfg.bc = parse_boundary_spec("simply-supported"); break;
    case 'V': cfg.bc = parse_boundary_spec("V"); break;
    default: cfg.bc = parse_boundary_spec("M"); break;
  }
  cfg.j = 1;
  cfg.form = s == 0 ? MassForm::L2 : MassForm::Gradient;
  // A single clamped quintic triangle has no free DOF.
  cfg.init_red = 2;
  cfg.max_ndof = max_ndof;
  cfg.threads = threads;
  return cfg;
}

ConstantsResult principal_eigenvalue(const ConstantsSpec& spec, long max_ndof, int threads) {
  ConstantsResult out;
  out.records = afem_loop(spec.afem_config(max_ndof, threads));
  out.lambda_min = out.records.back().lambda;
  return out;
}

double interpolation_constant(double lambda_min) {
  if (!(lambda_min > 0.0)) throw Error(ErrorKind::NonPositiveEigenvalue, std::to_string(lambda_min));
  return 1.0 / std::sqrt(lambda_min);
}

}  // namespace biharm
