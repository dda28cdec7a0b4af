#pragma once

#include "ghostsim/geometry.hpp"
#include "ghostsim/numerics.hpp"

namespace ghostsim::oracle {

// Closed forms used to check the quadrature-based assembly. Nothing in here
// calls into the biphoton or detection code.

/// Effective numerical aperture a_p/(sqrt(2)*d2) set by the pump radius.
Real na_angle(Real a_p, Real d2);
inline Real na_angle(const Scenario& s) { return na_angle(s.a_p, s.d2); }

/// 1/e half-width of the integrating-detector diffraction pattern,
/// (d3 - d2)*a_p/(sqrt(2)*d2). Depends on neither lambda nor w.
Real sigma_d(Real a_p, Real d2, Real d3);
inline Real sigma_d(const Scenario& s) { return sigma_d(s.a_p, s.d2, s.d3); }

/// FWHM of exp(-(x/sigma)^2).
inline Real gaussian_fwhm(Real sigma) { return 2 * std::sqrt(std::log(2.0)) * sigma; }

/// exp(-(x/sigma_d)^2) on the grid.
IntensityProfile analytic_diffraction_ccr(const Scenario& s, const GridSpec& grid);

/// Point-detector ghost-plane amplitude as a difference of two erf_halfnorm
/// terms with edges at +-m*w/2 and scale pi*a_p/(lambda*d2). Real-valued; the
/// common chirp and the 1/m Jacobian drop out of every normalized comparison.
SampledProfile<Real> erf_ghost_profile(const Scenario& s, const GridSpec& grid);

/// Largest |a - b|/max(a, b) over nodes where max(a, b) > threshold. Both
/// profiles must share a grid.
Real compare_profiles(const IntensityProfile& a, const IntensityProfile& b, Real threshold);

}  // namespace ghostsim::oracle
