#include <cmath>
#include <random>

#include "doctest.h"
#include "ghostsim/numerics.hpp"

using namespace ghostsim;

namespace {

IntensityProfile sample(const GridSpec& grid, auto&& fn) {
  VectorXr v(grid.size());
  for (int i = 0; i < grid.size(); ++i) v[i] = fn(grid[i]);
  return {grid, v};
}

}  // namespace

TEST_SUITE("numerics") {
  TEST_CASE("Simpson integration") {
    CHECK(integrate_complex([](Real) { return 1.0; }, 0.0, 1.0, 2) == Complex(1.0, 0.0));
    CHECK(std::abs(integrate_complex([](Real x) { return std::sin(x); }, 0.0, kPi, 128) - 2.0) < 1e-8);
    CHECK_THROWS_AS(integrate_complex([](Real) { return 1.0; }, 1.0, 0.0, 2), InvalidArgument);
    CHECK_THROWS_AS(integrate_complex([](Real) { return 1.0; }, 0.0, 1.0, 3), InvalidArgument);
    CHECK_THROWS_AS(integrate_complex([](Real) { return 1.0; }, 0.0, 1.0, 0), InvalidArgument);
  }

  TEST_CASE("Gaussian Fourier amplitude agrees with quadrature") {
    const Real a = 1.5e-3;
    CHECK(gaussian_fourier_amplitude(a, 0).real() == doctest::Approx(a * std::sqrt(kPi)));
    CHECK(gaussian_fourier_amplitude(a, 2 / a).real() == doctest::Approx(a * std::sqrt(kPi) / std::exp(1.0)));
    CHECK(gaussian_fourier_amplitude(a, 5000).imag() == 0.0);
    CHECK_THROWS_AS(gaussian_fourier_amplitude(0, 1), InvalidArgument);

    // |q| a <= 10 over [-8a, 8a]
    for (Real qa : {0.0, 0.3, 1.0, 2.5, 7.5, 10.0, -4.0}) {
      const Real q = qa / a;
      const Complex quad = integrate_complex(
          [&](Real x) { return std::exp(-x * x / (a * a)) * std::polar(1.0, -q * x); }, -8 * a, 8 * a, 1024);
      const Complex closed = gaussian_fourier_amplitude(a, q);
      CHECK(std::abs(quad - closed) <= 1e-9 * std::abs(closed) + 1e-15 * a);
    }
    // the [-6a, 6a] example at q = 5000
    const Real q = 5000;
    const Complex quad = integrate_complex(
        [&](Real x) { return std::exp(-x * x / (a * a)) * std::polar(1.0, -q * x); }, -6 * a, 6 * a, 1024);
    CHECK(std::abs(quad - gaussian_fourier_amplitude(a, q)) <= 1e-9 * std::abs(gaussian_fourier_amplitude(a, q)));
  }

  TEST_CASE("erf_halfnorm matches its defining integral") {
    CHECK(erf_halfnorm(0) == 0.0);
    CHECK(erf_halfnorm(10) == doctest::Approx(0.886226925452758).epsilon(1e-15));
    CHECK(erf_halfnorm(1) == doctest::Approx(0.746824132812427).epsilon(1e-13));
    for (Real u : {0.05, 0.5, 1.0, 1.7, 3.0, 6.0}) {
      const Real quad = integrate([](Real y) { return std::exp(-y * y); }, 0.0, u, 2000);
      CHECK(std::abs(erf_halfnorm(u) - quad) < 1e-12);
      CHECK(erf_halfnorm(-u) == -erf_halfnorm(u));
    }
  }

  TEST_CASE("required_panels follows the chirp rule") {
    CHECK(required_panels(702e-9, 0.5, 1e-3) == static_cast<int>(std::ceil(4e-6 / (702e-9 * 0.5))));
    CHECK_THROWS_AS(required_panels(702e-9, 0, 1e-3), InvalidArgument);
  }

  TEST_CASE("FWHM of analytic shapes") {
    const Real sigma = 1e-3;
    const auto gauss = sample(GridSpec::symmetric(5e-3, 4001), [&](Real x) { return std::exp(-std::pow(x / sigma, 2)); });
    const FwhmResult g = fwhm(gauss);
    CHECK(g.fwhm == doctest::Approx(2 * sigma * std::sqrt(std::log(2.0))).epsilon(1e-3));
    CHECK(g.left_x < g.peak_x);
    CHECK(g.peak_x < g.right_x);

    const GridSpec grid = GridSpec::symmetric(400e-6, 8001);
    const auto rect = sample(grid, [](Real x) { return std::abs(x) <= 80e-6 ? 1.0 : 0.0; });
    CHECK(std::abs(fwhm(rect).fwhm - 160e-6) <= grid.spacing());
  }

  TEST_CASE("FWHM ignores side lobes and reports bad profiles") {
    const GridSpec grid = GridSpec::symmetric(10.0, 2001);
    const auto sinc2 = sample(grid, [](Real x) {
      const Real s = x == 0 ? 1.0 : std::sin(kPi * x) / (kPi * x);
      return s * s;
    });
    CHECK(fwhm(sinc2).fwhm == doctest::Approx(0.8859).epsilon(2e-3));

    const auto ramp = sample(grid, [](Real x) { return x + 10.0; });
    CHECK_THROWS_AS(fwhm(ramp), MeasurementError);
    const auto plateau = sample(grid, [](Real x) { return x > 9.0 ? 0.2 : 1.0 + std::exp(-x * x); });
    CHECK_THROWS_AS(fwhm(plateau), MeasurementError);
  }

  TEST_CASE("FWHM is invariant under positive scaling") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<Real> scale(1e-6, 1e6), width(0.2, 2.0);
    const GridSpec grid = GridSpec::symmetric(10.0, 1001);
    for (int trial = 0; trial < 25; ++trial) {
      const Real w = width(rng);
      const auto p = sample(grid, [&](Real x) { return std::exp(-x * x / (w * w)) + 0.1 * std::exp(-std::pow(x - 3, 2)); });
      const IntensityProfile scaled{grid, p.values * scale(rng)};
      CHECK(fwhm(scaled).fwhm == doctest::Approx(fwhm(p).fwhm).epsilon(1e-12));
      CHECK(fwhm(peak_normalize(p)).fwhm == doctest::Approx(fwhm(p).fwhm).epsilon(1e-12));
    }
  }

  TEST_CASE("peak normalization") {
    const GridSpec grid(0.0, 15.0, 16);
    VectorXr v = VectorXr::Zero(16);
    v[1] = 2;
    v[2] = 4;
    v[3] = 2;
    const IntensityProfile n = peak_normalize(IntensityProfile{grid, v});
    CHECK(n.values[1] == 0.5);
    CHECK(n.values[2] == 1.0);
    CHECK(n.values[3] == 0.5);
    CHECK_THROWS_AS(peak_normalize(IntensityProfile{grid, VectorXr::Zero(16)}), InvalidArgument);

    VectorXc c = VectorXc::Zero(16);
    c[4] = Complex(0, -3);
    c[5] = Complex(1, 1);
    const AmplitudeProfile a = peak_normalize(AmplitudeProfile{grid, c});
    CHECK(std::abs(a.values[4]) == doctest::Approx(1.0));
    CHECK(std::arg(a.values[5]) == doctest::Approx(kPi / 4));
  }

  TEST_CASE("profiles validate their contents") {
    const GridSpec grid(0.0, 1.0, 16);
    CHECK_THROWS_AS(IntensityProfile(grid, VectorXr::Zero(5)), InvalidArgument);
    CHECK_THROWS_AS(IntensityProfile(grid, VectorXr::Constant(16, -1.0)), InvalidArgument);
  }

  TEST_CASE("power-law slope") {
    CHECK(fit_power_law({{1, 1}, {2, 0.5}, {4, 0.25}}) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(fit_power_law({{1, 1}, {2, 1}, {4, 1}}) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK_THROWS_AS(fit_power_law({{1, 1}, {2, 1}}), InvalidArgument);
    CHECK_THROWS_AS(fit_power_law({{1, 1}, {0, 1}, {2, 2}}), InvalidArgument);
  }

  TEST_CASE("quadrature rules integrate polynomials") {
    const QuadratureRule s = simpson_rule(-1.0, 2.0, 8);
    CHECK(s.weights.dot(s.nodes.cwiseAbs2().cwiseProduct(s.nodes)) == doctest::Approx(3.75));
    const QuadratureRule m = midpoint_rule(0.0, 1.0, 100);
    CHECK(m.weights.sum() == doctest::Approx(1.0));
    CHECK(m.weights.dot(m.nodes) == doctest::Approx(0.5));
    CHECK_THROWS_AS(simpson_weights(GridSpec(0.0, 1.0, 16)), InvalidArgument);
  }
}
