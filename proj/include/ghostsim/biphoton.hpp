#pragma once

#include "ghostsim/common.hpp"
#include "ghostsim/geometry.hpp"
#include "ghostsim/numerics.hpp"

namespace ghostsim {

enum class Plane { ghost, diffraction };

/// How the crystal-surface integral of the ghost-plane mode is evaluated.
enum class QuadPath { semi_analytic, full_numeric };

/// Panel and point counts used by every assembled quantity.
struct Resolution {
  int slit_panels = 512;       ///< idler slit, x_1i
  int crystal_panels = 1024;   ///< crystal surface, x_oS (full-numeric path only)
  int transport_panels = 1024;  ///< ghost plane to diffraction plane, x_2s
  int output_points = 2049;

  /// Every panel count doubled; the output grid is left alone.
  Resolution refined() const;
};

/// 1/e half-width of the ghost-plane blur, lambda*d2/(pi*a_p).
Real ghost_blur_radius(const Scenario& s);

/// Half-width b of the x_2s integration: half the signal slit when present,
/// otherwise m*w/2 + 8*u_e, past which the ghost-plane amplitude is below
/// 1e-27 of its peak.
Real transport_half_width(const Scenario& s);

/// Pump-limited truncation of the crystal integral, +-8 a_p.
inline constexpr Real kCrystalTruncation = 8.0;

/// Ghost-plane mode f(x_1i, x_2s) for every pair of nodes: rows follow x2,
/// columns follow x1.
MatrixXc ghost_field(const Scenario& s, const VectorXr& x1, const VectorXr& x2,
                     QuadPath path = QuadPath::semi_analytic, int crystal_panels = 1024);

/// Throws NyquistViolation if panels of width h cannot follow a phase whose
/// slope is bounded by 2*pi*slope_bound, i.e. if h*slope_bound > 1/2.
void check_phase_sampling(Real h, Real slope_bound, const char* what);

/// Weighted Fresnel transport operator: entry (i, j) is
/// exp(i*k*dz) * exp(i*pi*(out_i - in_j)^2/(lambda*dz)) * weight_j.
MatrixXc fresnel_kernel(Real lambda, Real dz, const QuadratureRule& in, const VectorXr& out);

/// Quadrature rule over [-b, b] for the ghost-to-diffraction transport,
/// validated against the phase slope of the integrand for outputs up to
/// |x3| = x3_max.
QuadratureRule transport_rule(const Scenario& s, Real x3_max, int panels);

/// Diffraction-plane mode f(x_1i, x_3s): rows follow x3, columns follow x1.
MatrixXc diffraction_field(const Scenario& s, const VectorXr& x1, const VectorXr& x3, QuadPath path,
                           const Resolution& res);

/// Ghost-plane mode over x_2s for one idler-slit coordinate.
AmplitudeProfile mode_f_ghost(const Scenario& s, Real x_1i, const GridSpec& grid,
                              QuadPath path = QuadPath::semi_analytic, const Resolution& res = {});

/// Diffraction-plane mode over x_3s for one idler-slit coordinate.
AmplitudeProfile mode_f_diffraction(const Scenario& s, Real x_1i, const GridSpec& grid,
                                    QuadPath path = QuadPath::semi_analytic, const Resolution& res = {});

/// Free-space Fresnel transport by dz of an amplitude sampled on an
/// odd-sized grid (Simpson), evaluated on out_grid. The 1/sqrt(i*lambda*dz)
/// prefactor is omitted.
AmplitudeProfile fresnel_step(const AmplitudeProfile& p, Real lambda, Real dz, const GridSpec& out_grid);

/// Idler-slit integral of the mode weighted by exp(-2*pi*i*x_1i*x_D1/(lambda*f_c)).
AmplitudeProfile mode_g(const Scenario& s, Real x_D1, Plane plane, const GridSpec& grid,
                        QuadPath path = QuadPath::semi_analytic, const Resolution& res = {});

/// Focal-plane phase weights exp(-2*pi*i*x1*x_D1/(lambda*f_c)) times the slit
/// weights: rows follow x1, columns follow x_D1.
MatrixXc focal_plane_transform(const Scenario& s, const QuadratureRule& slit, const VectorXr& x_D1);

}  // namespace ghostsim
