#include <cmath>

#include "doctest.h"
#include "ghostsim/oracle.hpp"

using namespace ghostsim;

TEST_SUITE("oracle") {
  TEST_CASE("diffraction width and aperture angle") {
    const Scenario base = build_scenario("fig3_noslit");
    const Scenario large = build_scenario("fig6_noslit");
    CHECK(oracle::sigma_d(base) == doctest::Approx(0.7119e-3).epsilon(1e-4));
    CHECK(oracle::sigma_d(large) == doctest::Approx(3.559e-3).epsilon(1e-4));
    CHECK(oracle::na_angle(base) == doctest::Approx(1.4237e-3).epsilon(1e-4));
    CHECK(oracle::na_angle(large.a_p, large.d2) / oracle::na_angle(base) ==
          doctest::Approx(0.745 / 0.149).epsilon(1e-14));
    CHECK(oracle::gaussian_fwhm(1.0) == doctest::Approx(1.6651).epsilon(1e-4));
    CHECK_THROWS_AS(oracle::sigma_d(1e-3, 1.0, 0.5), InvalidArgument);
    CHECK_THROWS_AS(oracle::na_angle(1e-3, 0.0), InvalidArgument);
  }

  TEST_CASE("sigma_d does not depend on wavelength or slit width") {
    const Scenario a = build_scenario("fig6_noslit");
    const Scenario b = build_scenario("fig6_noslit", {"lambda=5e-7", "w=3e-4"});
    CHECK(oracle::sigma_d(a) == oracle::sigma_d(b));
  }

  TEST_CASE("analytic diffraction profile peaks at one") {
    const Scenario s = build_scenario("fig6_noslit");
    const GridSpec grid = GridSpec::symmetric(15e-3, 1025);
    const IntensityProfile p = oracle::analytic_diffraction_ccr(s, grid);
    CHECK(p.values.maxCoeff() == doctest::Approx(1.0));
    CHECK(fwhm(p).fwhm == doctest::Approx(oracle::gaussian_fwhm(oracle::sigma_d(s))).epsilon(1e-4));
  }

  TEST_CASE("erf ghost profile limits") {
    // sharp imaging: a huge pump gives a rectangle of width m*w
    const Scenario sharp = build_scenario("fig4", {"a_p=1"});
    const GridSpec grid = GridSpec::symmetric(300e-6, 6001);
    const SampledProfile<Real> rect = oracle::erf_ghost_profile(sharp, grid);
    CHECK(std::abs(fwhm(squared_modulus(AmplitudeProfile{grid, rect.values.cast<Complex>()})).fwhm - sharp.m * sharp.w) <
          2 * grid.spacing());

    // tiny slit: the width approaches that of the blur kernel, 2*sqrt(ln 2 / 2)*u_e for |.|^2
    const Scenario narrow = build_scenario("fig4", {"w=1e-7"});
    const Real u_e = narrow.lambda * narrow.d2 / (kPi * narrow.a_p);
    const SampledProfile<Real> blur = oracle::erf_ghost_profile(narrow, grid);
    const IntensityProfile i{grid, blur.values.cwiseAbs2()};
    CHECK(fwhm(i).fwhm == doctest::Approx(2 * std::sqrt(std::log(2.0) / 2) * u_e).epsilon(1e-3));
  }

  TEST_CASE("erf ghost profile at the baseline is about 155 um wide") {
    const Scenario s = build_scenario("fig4");
    const GridSpec grid = GridSpec::symmetric(400e-6, 4001);
    const SampledProfile<Real> g = oracle::erf_ghost_profile(s, grid);
    CHECK(fwhm(IntensityProfile{grid, g.values.cwiseAbs2()}).fwhm == doctest::Approx(155.5e-6).epsilon(0.02));
  }

  TEST_CASE("profile comparison") {
    const Scenario s = build_scenario("fig4");
    const GridSpec grid = GridSpec::symmetric(400e-6, 801);
    const SampledProfile<Real> g = oracle::erf_ghost_profile(s, grid);
    const IntensityProfile a = peak_normalize(IntensityProfile{grid, g.values.cwiseAbs2()});
    CHECK(oracle::compare_profiles(a, a, 1e-6) == 0.0);

    IntensityProfile perturbed = a;
    perturbed.values[400] *= 1 + 1e-3;
    CHECK(oracle::compare_profiles(a, perturbed, 1e-6) > 1e-6);
    CHECK(oracle::compare_profiles(a, perturbed, 1e-6) == doctest::Approx(1e-3 / (1 + 1e-3)).epsilon(1e-9));

    const IntensityProfile other{GridSpec::symmetric(300e-6, 801), a.values};
    CHECK_THROWS_AS(oracle::compare_profiles(a, other, 1e-6), InvalidArgument);
  }
}
