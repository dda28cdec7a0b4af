#pragma once

#include <cmath>
#include <type_traits>
#include <utility>
#include <vector>

#include "ghostsim/common.hpp"
#include "ghostsim/geometry.hpp"

namespace ghostsim {

/// Nodes and weights of a fixed quadrature rule on [a, b].
struct QuadratureRule {
  VectorXr nodes;
  VectorXr weights;

  Eigen::Index size() const { return nodes.size(); }
};

/// Composite Simpson on `panels` (even, >= 2) equal panels.
QuadratureRule simpson_rule(Real a, Real b, int panels);

/// Composite midpoint rule on `cells` equal cells.
QuadratureRule midpoint_rule(Real a, Real b, int cells);

/// Simpson weights for the nodes of `grid`; the grid must have an odd
/// number of points.
VectorXr simpson_weights(const GridSpec& grid);

/// Trapezoid weights for the nodes of `grid`.
VectorXr trapezoid_weights(const GridSpec& grid);

/// Panels needed so that the chirp exp(i*pi*x^2/(lambda*dz)) advances by less
/// than pi/2 per panel over [-x_max, x_max].
int required_panels(Real lambda, Real dz, Real x_max);

/// Composite Simpson estimate of the integral of `f` over [a, b].
template <typename Fn>
auto integrate(Fn&& f, Real a, Real b, int panels) {
  using Result = std::decay_t<decltype(f(a))>;
  if (!(a < b)) throw InvalidArgument("integration requires a < b");
  if (panels < 2 || panels % 2 != 0) throw InvalidArgument("Simpson rule requires an even panel count >= 2");
  const Real h = (b - a) / panels;
  Result odd{}, even{};
  for (int i = 1; i < panels; ++i) {
    const Real x = a + i * h;
    (i % 2 == 1 ? odd : even) += f(x);
  }
  return (f(a) + f(b) + Real(4) * odd + Real(2) * even) * (h / 3);
}

template <typename Fn>
Complex integrate_complex(Fn&& f, Real a, Real b, int panels) {
  return integrate([&](Real x) { return Complex(f(x)); }, a, b, panels);
}

/// Closed form of the integral over x of exp(-x^2/a^2) * exp(-i*q*x),
/// a*sqrt(pi)*exp(-q^2*a^2/4).
Complex gaussian_fourier_amplitude(Real a, Real q);

/// Integral of exp(-y^2) from 0 to u: the standard error function scaled by
/// sqrt(pi)/2.
Real erf_halfnorm(Real u);

/// A uniform grid with one value per node. Scalar is Complex for amplitude
/// profiles and Real for (nonnegative) intensity profiles.
template <typename Scalar>
struct SampledProfile {
  GridSpec grid;
  VectorX<Scalar> values;

  SampledProfile(GridSpec g, VectorX<Scalar> v) : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid.size()) throw InvalidArgument("profile length does not match its grid");
    if constexpr (std::is_same_v<Scalar, Real>) {
      if ((values.array() < 0).any()) throw InvalidArgument("intensity profile has negative values");
    }
  }

  static constexpr bool is_intensity = std::is_same_v<Scalar, Real>;
};

using AmplitudeProfile = SampledProfile<Complex>;
using IntensityProfile = SampledProfile<Real>;

inline IntensityProfile squared_modulus(const AmplitudeProfile& p) {
  return {p.grid, p.values.cwiseAbs2()};
}

/// Scales so that the largest modulus is 1; amplitude phases are kept.
template <typename Scalar>
SampledProfile<Scalar> peak_normalize(const SampledProfile<Scalar>& p) {
  const Real peak = p.values.cwiseAbs().maxCoeff();
  if (!(peak > 0)) throw InvalidArgument("cannot peak-normalize an all-zero profile");
  return {p.grid, p.values / peak};
}

/// Largest |a - b| / max(a, b) over nodes where max(a, b) > threshold.
Real max_relative_deviation(const VectorXr& a, const VectorXr& b, Real threshold);

/// Largest relative mismatch between p(x) and p(-x) over nodes above
/// `threshold` of the peak. The grid must be symmetric about zero.
Real symmetry_deviation(const IntensityProfile& p, Real threshold = 1e-6);

struct FwhmResult {
  Real peak_x = 0;
  Real peak_value = 0;
  Real left_x = 0;
  Real right_x = 0;
  Real fwhm = 0;
  int peak_index = 0;
  int left_bracket = 0;   ///< last sample at or above half max, walking left
  int right_bracket = 0;  ///< last sample at or above half max, walking right
};

/// Full width at half maximum, using the half-max crossings nearest the
/// global maximum and linear interpolation between the bracketing samples.
FwhmResult fwhm(const IntensityProfile& p);

/// Least-squares slope of log(fwhm) against log(w).
Real fit_power_law(const std::vector<std::pair<Real, Real>>& points);

}  // namespace ghostsim
