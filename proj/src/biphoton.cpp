#include "ghostsim/biphoton.hpp"

#include <string>

namespace ghostsim {

Resolution Resolution::refined() const {
  Resolution r = *this;
  r.slit_panels *= 2;
  r.crystal_panels *= 2;
  r.transport_panels *= 2;
  return r;
}

Real ghost_blur_radius(const Scenario& s) { return s.lambda * s.d2 / (kPi * s.a_p); }

Real transport_half_width(const Scenario& s) {
  if (s.signal_slit) return 0.5 * *s.signal_slit;
  return 0.5 * s.m * s.w + 8.0 * ghost_blur_radius(s);
}

MatrixXc ghost_field(const Scenario& s, const VectorXr& x1, const VectorXr& x2, QuadPath path,
                     int crystal_panels) {
  const Real lambda_d2 = s.lambda * s.d2;
  const VectorXc chirp = (Complex(0, kPi / lambda_d2) * x2.array().square().cast<Complex>()).exp();

  if (path == QuadPath::semi_analytic) {
    MatrixXc field(x2.size(), x1.size());
    for (Eigen::Index j = 0; j < x1.size(); ++j) {
      for (Eigen::Index i = 0; i < x2.size(); ++i) {
        const Real q = 2 * kPi * (s.m * x1[j] + x2[i]) / lambda_d2;
        field(i, j) = chirp[i] * gaussian_fourier_amplitude(s.a_p, q);
      }
    }
    return field;
  }

  // exp(-2 pi i xo (m x1 + x2)/(lambda d2)) factors into an x2 part and an x1
  // part, so the crystal integral is a product of two dense operators.
  const Real bound = kCrystalTruncation * s.a_p;
  const QuadratureRule crystal = simpson_rule(-bound, bound, crystal_panels);
  const Real scale = -2 * kPi / lambda_d2;
  const MatrixXc to_ghost =
      (Complex(0, scale) * (x2 * crystal.nodes.transpose()).cast<Complex>()).array().exp().matrix();
  const VectorXr pump = crystal.weights.array() * (-(crystal.nodes.array() / s.a_p).square()).exp();
  const MatrixXc from_slit =
      pump.asDiagonal() *
      (Complex(0, scale * s.m) * (crystal.nodes * x1.transpose()).cast<Complex>()).array().exp().matrix();
  return chirp.asDiagonal() * (to_ghost * from_slit);
}

void check_phase_sampling(Real h, Real slope_bound, const char* what) {
  if (h * slope_bound > 0.5) {
    const int needed = static_cast<int>(std::ceil(2 * h * slope_bound));
    throw NyquistViolation(std::string(what) + ": sampling too coarse for the kernel phase (needs about " +
                           std::to_string(needed) + "x more points)");
  }
}

MatrixXc fresnel_kernel(Real lambda, Real dz, const QuadratureRule& in, const VectorXr& out) {
  if (!(dz > 0)) throw InvalidArgument("propagation distance must be positive");
  const Real alpha = kPi / (lambda * dz);
  const Complex plane_wave = std::polar(1.0, std::fmod(2 * kPi * dz / lambda, 2 * kPi));
  MatrixXc kernel(out.size(), in.size());
  for (Eigen::Index j = 0; j < in.size(); ++j) {
    const Complex wj = plane_wave * in.weights[j];
    for (Eigen::Index i = 0; i < out.size(); ++i) {
      const Real d = out[i] - in.nodes[j];
      kernel(i, j) = wj * std::polar(1.0, alpha * d * d);
    }
  }
  return kernel;
}

QuadratureRule transport_rule(const Scenario& s, Real x3_max, int panels) {
  const Real b = transport_half_width(s);
  const Real dz = s.d3 - s.d2;
  if (!(dz > 0)) throw InvalidArgument("diffraction plane must lie beyond the ghost image plane");
  if (panels < required_panels(s.lambda, dz, b)) {
    throw NyquistViolation("transport quadrature has fewer panels than the chirp requires");
  }
  QuadratureRule rule = simpson_rule(-b, b, panels);
  const Real slope = b / (s.lambda * s.d2) + (b + x3_max) / (s.lambda * dz);
  check_phase_sampling(2 * b / panels, slope, "ghost-to-diffraction transport");
  return rule;
}

MatrixXc diffraction_field(const Scenario& s, const VectorXr& x1, const VectorXr& x3, QuadPath path,
                           const Resolution& res) {
  const QuadratureRule rule = transport_rule(s, x3.cwiseAbs().maxCoeff(), res.transport_panels);
  const MatrixXc ghost = ghost_field(s, x1, rule.nodes, path, res.crystal_panels);
  return fresnel_kernel(s.lambda, s.d3 - s.d2, rule, x3) * ghost;
}

AmplitudeProfile mode_f_ghost(const Scenario& s, Real x_1i, const GridSpec& grid, QuadPath path,
                              const Resolution& res) {
  if (std::abs(x_1i) > 0.5 * s.w) throw InvalidArgument("x_1i lies outside the idler slit");
  const VectorXr x1 = VectorXr::Constant(1, x_1i);
  return {grid, ghost_field(s, x1, grid.nodes(), path, res.crystal_panels).col(0)};
}

AmplitudeProfile mode_f_diffraction(const Scenario& s, Real x_1i, const GridSpec& grid, QuadPath path,
                                    const Resolution& res) {
  if (std::abs(x_1i) > 0.5 * s.w) throw InvalidArgument("x_1i lies outside the idler slit");
  const VectorXr x1 = VectorXr::Constant(1, x_1i);
  return {grid, diffraction_field(s, x1, grid.nodes(), path, res).col(0)};
}

AmplitudeProfile fresnel_step(const AmplitudeProfile& p, Real lambda, Real dz, const GridSpec& out_grid) {
  if (!(dz > 0)) throw InvalidArgument("propagation distance must be positive");
  if (!(lambda > 0)) throw InvalidArgument("wavelength must be positive");
  check_phase_sampling(p.grid.spacing(), (p.grid.max_abs() + out_grid.max_abs()) / (lambda * dz),
                       "fresnel_step input grid");
  const QuadratureRule in{p.grid.nodes(), simpson_weights(p.grid)};
  return {out_grid, fresnel_kernel(lambda, dz, in, out_grid.nodes()) * p.values};
}

MatrixXc focal_plane_transform(const Scenario& s, const QuadratureRule& slit, const VectorXr& x_D1) {
  const Real scale = -2 * kPi / (s.lambda * s.f_c);
  MatrixXc transform(slit.size(), x_D1.size());
  for (Eigen::Index l = 0; l < x_D1.size(); ++l) {
    for (Eigen::Index j = 0; j < slit.size(); ++j) {
      transform(j, l) = slit.weights[j] * std::polar(1.0, scale * slit.nodes[j] * x_D1[l]);
    }
  }
  return transform;
}

AmplitudeProfile mode_g(const Scenario& s, Real x_D1, Plane plane, const GridSpec& grid, QuadPath path,
                        const Resolution& res) {
  if (!std::isfinite(x_D1)) throw InvalidArgument("x_D1 must be finite");
  const QuadratureRule slit = simpson_rule(-0.5 * s.w, 0.5 * s.w, res.slit_panels);
  const MatrixXc weights = focal_plane_transform(s, slit, VectorXr::Constant(1, x_D1));
  const MatrixXc field = plane == Plane::ghost ? ghost_field(s, slit.nodes, grid.nodes(), path, res.crystal_panels)
                                               : diffraction_field(s, slit.nodes, grid.nodes(), path, res);
  return {grid, field * weights.col(0)};
}

}  // namespace ghostsim
