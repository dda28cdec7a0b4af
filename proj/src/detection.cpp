#include "ghostsim/detection.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "ghostsim/oracle.hpp"

namespace ghostsim {

namespace {

using FieldBuilder = std::function<MatrixXc(const VectorXr& x1)>;

CcrProfile make_profile(const Scenario& s, DetectorSpec detector, Plane plane, Method method,
                        const GridSpec& grid, VectorXr intensity, Real capture = 1.0) {
  IntensityProfile profile = peak_normalize(IntensityProfile{grid, std::move(intensity)});
  const FwhmResult width = fwhm(profile);
  return {s, std::move(detector), plane, method, std::move(profile), width, capture};
}

QuadratureRule slit_rule(const Scenario& s, const Resolution& res) {
  return simpson_rule(-0.5 * s.w, 0.5 * s.w, res.slit_panels);
}

// Integral over x_1i of |f|^2: the focal-plane integral of |g|^2 divided by
// lambda*f_c.
VectorXr parseval_integral(const Scenario& s, const FieldBuilder& field, const Resolution& res) {
  const QuadratureRule slit = slit_rule(s, res);
  return field(slit.nodes).cwiseAbs2() * slit.weights;
}

struct DirectResult {
  VectorXr intensity;
  Real capture;
};

// Explicit g(x_D1) on the focal-plane grid followed by the x_D1 integral of
// |g|^2. The slit integral uses the midpoint rule so that g is periodic in
// x_D1 with period lambda*f_c/h; the default grid spans exactly one period.
DirectResult direct_integral(const Scenario& s, const FieldBuilder& field, const Resolution& res,
                             const std::optional<GridSpec>& focal_grid) {
  const QuadratureRule slit = midpoint_rule(-0.5 * s.w, 0.5 * s.w, res.slit_panels);
  const GridSpec focal = focal_grid.value_or(default_focal_grid(s, res));
  const MatrixXc f = field(slit.nodes);
  const MatrixXc g = f * focal_plane_transform(s, slit, focal.nodes());
  VectorXr intensity = g.cwiseAbs2() * trapezoid_weights(focal);

  const Real reference = s.lambda * s.f_c * (f.cwiseAbs2() * slit.weights).sum();
  const Real capture = intensity.sum() / reference;
  if (capture < kMinEnergyCapture || capture > 2 - kMinEnergyCapture) {
    throw InvalidArgument("focal-plane grid captures " + std::to_string(100 * capture) +
                          "% of the idler energy (needs 99.9%); widen or refine it");
  }
  return {std::move(intensity), capture};
}

CcrProfile integrating(const Scenario& s, Plane plane, const GridSpec& grid, Method method, const Resolution& res,
                       const std::optional<GridSpec>& focal_grid, const FieldBuilder& field) {
  DetectorSpec detector{DetectorModel::integrating, 0.0, {}};
  switch (method) {
    case Method::parseval:
      return make_profile(s, detector, plane, method, grid, parseval_integral(s, field, res));
    case Method::direct: {
      detector.focal_plane_grid = focal_grid.value_or(default_focal_grid(s, res));
      auto [intensity, capture] = direct_integral(s, field, res, detector.focal_plane_grid);
      return make_profile(s, detector, plane, method, grid, std::move(intensity), capture);
    }
    default:
      throw InvalidArgument("integrating detector supports the direct and parseval methods");
  }
}

}  // namespace

GridSpec default_grid(const Scenario& s, Plane plane, int points) {
  if (plane == Plane::ghost) {
    return GridSpec::symmetric(0.5 * s.m * s.w + 6 * ghost_blur_radius(s), points);
  }
  const Real slit_diffraction = s.lambda * (s.d3 - s.d2) / (s.m * s.w);
  return GridSpec::symmetric(4 * std::max(oracle::sigma_d(s), slit_diffraction), points);
}

GridSpec default_focal_grid(const Scenario& s, const Resolution& res) {
  const Real h = s.w / res.slit_panels;
  return GridSpec::symmetric(s.lambda * s.f_c / (2 * h), 2 * res.slit_panels + 1);
}

CcrProfile ccr_ghost_integrating(const Scenario& s, const GridSpec& grid, Method method, const Resolution& res,
                                 std::optional<GridSpec> focal_grid) {
  const VectorXr x2 = grid.nodes();
  return integrating(s, Plane::ghost, grid, method, res, focal_grid, [&](const VectorXr& x1) {
    return ghost_field(s, x1, x2, QuadPath::semi_analytic, res.crystal_panels);
  });
}

CcrProfile ccr_diffraction_integrating(const Scenario& s, const GridSpec& grid, Method method,
                                       const Resolution& res, std::optional<GridSpec> focal_grid) {
  const VectorXr x3 = grid.nodes();
  return integrating(s, Plane::diffraction, grid, method, res, focal_grid, [&](const VectorXr& x1) {
    return diffraction_field(s, x1, x3, QuadPath::semi_analytic, res);
  });
}

CcrProfile ccr_ghost_point(const Scenario& s, const GridSpec& grid, QuadPath path, const Resolution& res) {
  const AmplitudeProfile g = mode_g(s, 0.0, Plane::ghost, grid, path, res);
  return make_profile(s, {DetectorModel::point, 0.0, {}}, Plane::ghost, Method::automatic, grid,
                      g.values.cwiseAbs2());
}

CcrProfile ccr_diffraction_point(const Scenario& s, const GridSpec& grid, Method method, const Resolution& res) {
  const Real dz = s.d3 - s.d2;
  const QuadratureRule transport = transport_rule(s, grid.max_abs(), res.transport_panels);
  const QuadratureRule slit = slit_rule(s, res);
  // g(0, x_2s) on the transport nodes, already truncated to [-b, b].
  const VectorXc ghost = ghost_field(s, slit.nodes, transport.nodes) * slit.weights.cast<Complex>();
  const VectorXr x3 = grid.nodes();

  VectorXc amplitude;
  switch (method) {
    case Method::fraunhofer: {
      if (!validate_geometry(s).at(kFraunhoferCheck).passed) {
        throw InvalidArgument("diffraction plane is not in the Fraunhofer regime for this scenario");
      }
      const Real scale = -2 * kPi / (s.lambda * dz);
      MatrixXc kernel(x3.size(), transport.size());
      for (Eigen::Index j = 0; j < transport.size(); ++j) {
        for (Eigen::Index i = 0; i < x3.size(); ++i) {
          kernel(i, j) = transport.weights[j] * std::polar(1.0, scale * transport.nodes[j] * x3[i]);
        }
      }
      amplitude = kernel * ghost;
      break;
    }
    case Method::fresnel: {
      const GridSpec ghost_grid(transport.nodes[0], transport.nodes[transport.size() - 1],
                                static_cast<int>(transport.size()));
      amplitude = fresnel_step(AmplitudeProfile{ghost_grid, ghost}, s.lambda, dz, grid).values;
      break;
    }
    default:
      throw InvalidArgument("point detector in the diffraction plane supports the fraunhofer and fresnel methods");
  }
  return make_profile(s, {DetectorModel::point, 0.0, {}}, Plane::diffraction, method, grid,
                      amplitude.cwiseAbs2());
}

CcrProfile compute_ccr(const Scenario& s, Plane plane, DetectorModel model, Method method,
                       const std::optional<GridSpec>& grid, const Resolution& res) {
  const GridSpec g = grid.value_or(default_grid(s, plane, res.output_points));
  if (model == DetectorModel::integrating) {
    if (method == Method::automatic) method = Method::parseval;
    return plane == Plane::ghost ? ccr_ghost_integrating(s, g, method, res)
                                 : ccr_diffraction_integrating(s, g, method, res);
  }
  if (plane == Plane::ghost) {
    if (method != Method::automatic) throw InvalidArgument("point detector in the ghost plane takes no method");
    return ccr_ghost_point(s, g, QuadPath::semi_analytic, res);
  }
  if (method == Method::automatic) method = Method::fresnel;
  return ccr_diffraction_point(s, g, method, res);
}

IncoherentDecomposition decompose_incoherent_sum(const Scenario& s, const std::vector<Real>& x_D1_samples,
                                                 const GridSpec& grid, const Resolution& res) {
  if (x_D1_samples.size() < 3) throw InvalidArgument("incoherent decomposition needs at least 3 samples");
  if (!std::is_sorted(x_D1_samples.begin(), x_D1_samples.end()) ||
      std::adjacent_find(x_D1_samples.begin(), x_D1_samples.end()) != x_D1_samples.end()) {
    throw InvalidArgument("focal-plane samples must be strictly increasing");
  }
  const auto n = x_D1_samples.size();
  const VectorXr samples = Eigen::Map<const VectorXr>(x_D1_samples.data(), static_cast<Eigen::Index>(n));
  VectorXr weights = VectorXr::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t l = 0; l + 1 < n; ++l) {
    const Real half = 0.5 * (x_D1_samples[l + 1] - x_D1_samples[l]);
    weights[l] += half;
    weights[l + 1] += half;
  }

  const QuadratureRule slit = slit_rule(s, res);
  const MatrixXr patterns =
      (diffraction_field(s, slit.nodes, grid.nodes(), QuadPath::semi_analytic, res) *
       focal_plane_transform(s, slit, samples))
          .cwiseAbs2();
  const VectorXr sum = patterns * weights;
  const Real scale = 1.0 / sum.maxCoeff();

  std::vector<IntensityProfile> components;
  for (Eigen::Index l = 0; l < patterns.cols(); ++l) components.emplace_back(grid, patterns.col(l) * scale);
  return {x_D1_samples, std::vector<Real>(weights.data(), weights.data() + weights.size()), std::move(components),
          make_profile(s, {DetectorModel::integrating, 0.0, {}}, Plane::diffraction, Method::direct, grid, sum)};
}

std::string_view to_string(Plane plane) { return plane == Plane::ghost ? "ghost" : "diffraction"; }

std::string_view to_string(DetectorModel model) {
  return model == DetectorModel::integrating ? "integrating" : "point";
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::automatic: return "auto";
    case Method::direct: return "direct";
    case Method::parseval: return "parseval";
    case Method::fraunhofer: return "fraunhofer";
    case Method::fresnel: return "fresnel";
  }
  return "auto";
}

Plane parse_plane(std::string_view text) {
  if (text == "ghost") return Plane::ghost;
  if (text == "diffraction") return Plane::diffraction;
  throw InvalidArgument("unknown plane '" + std::string(text) + "' (ghost, diffraction)");
}

DetectorModel parse_detector(std::string_view text) {
  if (text == "integrating") return DetectorModel::integrating;
  if (text == "point") return DetectorModel::point;
  throw InvalidArgument("unknown detector '" + std::string(text) + "' (integrating, point)");
}

Method parse_method(std::string_view text) {
  for (Method m : {Method::automatic, Method::direct, Method::parseval, Method::fraunhofer, Method::fresnel}) {
    if (text == to_string(m)) return m;
  }
  throw InvalidArgument("unknown method '" + std::string(text) + "'");
}

}  // namespace ghostsim
