#include "ghostsim/oracle.hpp"

namespace ghostsim::oracle {

Real na_angle(Real a_p, Real d2) {
  if (!(d2 > 0)) throw InvalidArgument("d2 must be positive");
  return a_p / (std::sqrt(2.0) * d2);
}

Real sigma_d(Real a_p, Real d2, Real d3) {
  if (!(d3 > d2)) throw InvalidArgument("sigma_d requires d3 > d2");
  return (d3 - d2) * na_angle(a_p, d2);
}

IntensityProfile analytic_diffraction_ccr(const Scenario& s, const GridSpec& grid) {
  const Real sigma = sigma_d(s);
  return {grid, (-(grid.nodes().array() / sigma).square()).exp().matrix()};
}

SampledProfile<Real> erf_ghost_profile(const Scenario& s, const GridSpec& grid) {
  const Real scale = kPi * s.a_p / (s.lambda * s.d2);
  const Real half = 0.5 * s.m * s.w;
  VectorXr values(grid.size());
  for (int i = 0; i < grid.size(); ++i) {
    const Real x = grid[i];
    values[i] = erf_halfnorm((x + half) * scale) - erf_halfnorm((x - half) * scale);
  }
  return {grid, values};
}

Real compare_profiles(const IntensityProfile& a, const IntensityProfile& b, Real threshold) {
  if (!(a.grid == b.grid)) throw InvalidArgument("profiles are sampled on different grids");
  return max_relative_deviation(a.values, b.values, threshold);
}

}  // namespace ghostsim::oracle
