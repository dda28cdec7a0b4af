#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "ghostsim/biphoton.hpp"

namespace ghostsim {

enum class DetectorModel { integrating, point };

/// How a correlated counting rate is assembled. `direct` and `parseval`
/// apply to the integrating detector, `fraunhofer` and `fresnel` to the
/// point detector in the diffraction plane.
enum class Method { automatic, direct, parseval, fraunhofer, fresnel };

struct DetectorSpec {
  DetectorModel model = DetectorModel::integrating;
  Real x_D1 = 0;                           ///< point detector position
  std::optional<GridSpec> focal_plane_grid;  ///< integrating detector, direct method
};

/// Peak-normalized correlated counting rate of the signal in one plane.
struct CcrProfile {
  Scenario scenario;
  DetectorSpec detector;
  Plane plane = Plane::ghost;
  Method method = Method::automatic;
  IntensityProfile profile;
  FwhmResult fwhm;
  /// Direct method only: focal-plane energy over the Parseval total.
  Real energy_capture = 1.0;
};

/// Output grid used when none is given: ghost plane +-(m*w/2 + 6*u_e),
/// diffraction plane +-4*max(sigma_d, lambda*(d3 - d2)/(m*w)).
GridSpec default_grid(const Scenario& s, Plane plane, int points = Resolution{}.output_points);

/// Focal-plane grid for the direct method: one full period
/// +-lambda*f_c/(2*h) of the midpoint slit rule with step h, 2*n+1 points.
GridSpec default_focal_grid(const Scenario& s, const Resolution& res = {});

/// Minimum focal-plane energy capture accepted by the direct method.
inline constexpr Real kMinEnergyCapture = 0.999;

CcrProfile ccr_ghost_integrating(const Scenario& s, const GridSpec& grid, Method method = Method::parseval,
                                 const Resolution& res = {}, std::optional<GridSpec> focal_grid = {});

CcrProfile ccr_ghost_point(const Scenario& s, const GridSpec& grid, QuadPath path = QuadPath::semi_analytic,
                           const Resolution& res = {});

CcrProfile ccr_diffraction_integrating(const Scenario& s, const GridSpec& grid, Method method = Method::parseval,
                                       const Resolution& res = {}, std::optional<GridSpec> focal_grid = {});

CcrProfile ccr_diffraction_point(const Scenario& s, const GridSpec& grid, Method method = Method::fresnel,
                                 const Resolution& res = {});

/// Dispatches on plane, detector model and method; Method::automatic picks
/// parseval for the integrating detector and fresnel for the point detector.
CcrProfile compute_ccr(const Scenario& s, Plane plane, DetectorModel model, Method method,
                       const std::optional<GridSpec>& grid = {}, const Resolution& res = {});

struct IncoherentDecomposition {
  std::vector<Real> x_D1;
  std::vector<Real> weights;  ///< trapezoid weights from the sample spacing
  /// Per-sample |g(x_D1, x_3s)|^2, all scaled by the same factor as `total`.
  std::vector<IntensityProfile> components;
  CcrProfile total;
};

/// Diffraction-plane patterns of the individual focal-plane modes and their
/// quadrature-weighted sum. Needs at least 3 sorted, distinct samples.
IncoherentDecomposition decompose_incoherent_sum(const Scenario& s, const std::vector<Real>& x_D1_samples,
                                                 const GridSpec& grid, const Resolution& res = {});

std::string_view to_string(Plane plane);
std::string_view to_string(DetectorModel model);
std::string_view to_string(Method method);
Plane parse_plane(std::string_view text);
DetectorModel parse_detector(std::string_view text);
Method parse_method(std::string_view text);

}  // namespace ghostsim
