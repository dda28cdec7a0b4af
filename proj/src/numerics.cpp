#include "ghostsim/numerics.hpp"

#include <algorithm>

#include <Eigen/QR>

namespace ghostsim {

QuadratureRule simpson_rule(Real a, Real b, int panels) {
  if (!(a < b)) throw InvalidArgument("integration requires a < b");
  if (panels < 2 || panels % 2 != 0) throw InvalidArgument("Simpson rule requires an even panel count >= 2");
  const Real h = (b - a) / panels;
  QuadratureRule rule{VectorXr(panels + 1), VectorXr(panels + 1)};
  for (int i = 0; i <= panels; ++i) {
    rule.nodes[i] = i == panels ? b : a + i * h;
    rule.weights[i] = (i == 0 || i == panels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
  }
  rule.weights *= h / 3;
  return rule;
}

QuadratureRule midpoint_rule(Real a, Real b, int cells) {
  if (!(a < b)) throw InvalidArgument("integration requires a < b");
  if (cells < 1) throw InvalidArgument("midpoint rule requires at least one cell");
  const Real h = (b - a) / cells;
  QuadratureRule rule{VectorXr(cells), VectorXr::Constant(cells, h)};
  for (int i = 0; i < cells; ++i) rule.nodes[i] = a + (i + 0.5) * h;
  return rule;
}

VectorXr simpson_weights(const GridSpec& grid) {
  if (grid.size() % 2 == 0) throw InvalidArgument("Simpson weights need an odd number of grid points");
  return simpson_rule(grid.x_min(), grid.x_max(), grid.size() - 1).weights;
}

VectorXr trapezoid_weights(const GridSpec& grid) {
  VectorXr w = VectorXr::Constant(grid.size(), grid.spacing());
  w[0] *= 0.5;
  w[grid.size() - 1] *= 0.5;
  return w;
}

int required_panels(Real lambda, Real dz, Real x_max) {
  if (!(lambda > 0) || !(dz > 0)) throw InvalidArgument("required_panels needs lambda > 0 and dz > 0");
  return static_cast<int>(std::ceil(4 * x_max * x_max / (lambda * dz)));
}

Complex gaussian_fourier_amplitude(Real a, Real q) {
  if (!(a > 0)) throw InvalidArgument("Gaussian radius must be positive");
  return {a * std::sqrt(kPi) * std::exp(-0.25 * q * q * a * a), 0.0};
}

Real erf_halfnorm(Real u) { return 0.5 * std::sqrt(kPi) * std::erf(u); }

Real max_relative_deviation(const VectorXr& a, const VectorXr& b, Real threshold) {
  if (a.size() != b.size()) throw InvalidArgument("profiles have different lengths");
  Real worst = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const Real scale = std::max(a[i], b[i]);
    if (scale > threshold) worst = std::max(worst, std::abs(a[i] - b[i]) / scale);
  }
  return worst;
}

Real symmetry_deviation(const IntensityProfile& p, Real threshold) {
  const Real tolerance = 1e-9 * p.grid.spacing();
  if (std::abs(p.grid.x_min() + p.grid.x_max()) > tolerance) {
    throw InvalidArgument("symmetry check needs a grid centered on zero");
  }
  const VectorXr mirrored = p.values.reverse();
  return max_relative_deviation(p.values, mirrored, threshold * p.values.maxCoeff());
}

FwhmResult fwhm(const IntensityProfile& p) {
  const auto& v = p.values;
  const int n = static_cast<int>(v.size());
  FwhmResult r;
  r.peak_value = v.maxCoeff(&r.peak_index);
  if (!(r.peak_value > 0)) throw MeasurementError("FWHM of an all-zero profile");
  if (r.peak_index == 0 || r.peak_index == n - 1) {
    throw MeasurementError("profile peak lies on the grid boundary; widen the grid");
  }
  r.peak_x = p.grid[r.peak_index];
  const Real half = 0.5 * r.peak_value;

  int i = r.peak_index;
  while (i + 1 < n && v[i + 1] >= half) ++i;
  if (i + 1 == n) throw MeasurementError("no half-maximum crossing right of the peak");
  r.right_bracket = i;
  r.right_x = p.grid[i] + (v[i] - half) / (v[i] - v[i + 1]) * p.grid.spacing();

  i = r.peak_index;
  while (i - 1 >= 0 && v[i - 1] >= half) --i;
  if (i == 0) throw MeasurementError("no half-maximum crossing left of the peak");
  r.left_bracket = i;
  r.left_x = p.grid[i] - (v[i] - half) / (v[i] - v[i - 1]) * p.grid.spacing();

  r.fwhm = r.right_x - r.left_x;
  return r;
}

Real fit_power_law(const std::vector<std::pair<Real, Real>>& points) {
  if (points.size() < 3) throw InvalidArgument("power-law fit needs at least 3 points");
  Eigen::MatrixX2d design(points.size(), 2);
  VectorXr rhs(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto [x, y] = points[i];
    if (!(x > 0) || !(y > 0)) throw InvalidArgument("power-law fit needs positive values");
    design(i, 0) = std::log(x);
    design(i, 1) = 1.0;
    rhs[i] = std::log(y);
  }
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(rhs);
  return coef[0];
}

}  // namespace ghostsim
