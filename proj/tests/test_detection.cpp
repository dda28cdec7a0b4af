#include <cmath>

#include "doctest.h"
#include "ghostsim/detection.hpp"
#include "ghostsim/oracle.hpp"

using namespace ghostsim;

namespace {

Real centroid(const IntensityProfile& p) {
  const VectorXr x = p.grid.nodes();
  return x.dot(p.values) / p.values.sum();
}

}  // namespace

TEST_SUITE("detection") {
  TEST_CASE("direct and Parseval routes agree") {
    const Scenario s = build_scenario("fig3_noslit");
    for (Plane plane : {Plane::ghost, Plane::diffraction}) {
      const GridSpec grid = default_grid(s, plane, 513);
      const CcrProfile p = compute_ccr(s, plane, DetectorModel::integrating, Method::parseval, grid);
      const CcrProfile d = compute_ccr(s, plane, DetectorModel::integrating, Method::direct, grid);
      CHECK((p.profile.values - d.profile.values).cwiseAbs().maxCoeff() < 5e-3);
      CHECK(d.fwhm.fwhm == doctest::Approx(p.fwhm.fwhm).epsilon(1e-3));
      CHECK(d.energy_capture == doctest::Approx(1.0).epsilon(1e-3));
    }
  }

  TEST_CASE("the collection-lens focal length drops out of the integrating detector") {
    const Scenario s = build_scenario("fig4");
    const Scenario s4 = build_scenario("fig4", {"f_c=0.4"});
    const GridSpec grid = default_grid(s, Plane::ghost, 513);
    const Real base = ccr_ghost_integrating(s, grid, Method::direct).fwhm.fwhm;
    CHECK(ccr_ghost_integrating(s4, grid, Method::direct).fwhm.fwhm == doctest::Approx(base).epsilon(1e-3));
  }

  TEST_CASE("a focal grid that misses the idler energy is refused") {
    const Scenario s = build_scenario("fig4");
    const GridSpec grid = default_grid(s, Plane::ghost, 257);
    const GridSpec narrow = GridSpec::symmetric(1e-3, 65);
    CHECK_THROWS_AS(ccr_ghost_integrating(s, grid, Method::direct, {}, narrow), InvalidArgument);
  }

  TEST_CASE("integrating diffraction pattern is even and close to the Gaussian oracle") {
    const Scenario s = build_scenario("fig6_noslit");
    const CcrProfile p = compute_ccr(s, Plane::diffraction, DetectorModel::integrating, Method::parseval);
    CHECK(symmetry_deviation(p.profile) < 1e-9);
    CHECK(p.fwhm.fwhm == doctest::Approx(oracle::gaussian_fwhm(oracle::sigma_d(s))).epsilon(0.01));
  }

  TEST_CASE("narrowing the signal slit never narrows the diffraction pattern") {
    Real previous = 0;
    for (const char* slit : {"signal_slit=none", "signal_slit=3.2e-4", "signal_slit=1.6e-4", "signal_slit=8e-5",
                             "signal_slit=4e-5"}) {
      const Scenario s = build_scenario("fig6_noslit", {slit});
      const GridSpec grid = GridSpec::symmetric(30e-3, 1025);
      const Real width = ccr_diffraction_integrating(s, grid).fwhm.fwhm;
      CHECK(width >= previous * (1 - 1e-6));
      previous = width;
    }
  }

  TEST_CASE("Fraunhofer and Fresnel point-detector patterns agree in the far field") {
    const Scenario s = build_scenario("fig9_noslit");
    const GridSpec grid = default_grid(s, Plane::diffraction, 1025);
    const Real fresnel = ccr_diffraction_point(s, grid, Method::fresnel).fwhm.fwhm;
    const Real fraunhofer = ccr_diffraction_point(s, grid, Method::fraunhofer).fwhm.fwhm;
    CHECK(fraunhofer == doctest::Approx(fresnel).epsilon(0.01));
    CHECK_THROWS_AS(ccr_diffraction_point(build_scenario("fig9_noslit", {"w=2e-3"}), grid, Method::fraunhofer),
                    InvalidArgument);
  }

  TEST_CASE("point detector is narrower than the integrating detector") {
    const Scenario s = build_scenario("fig6_noslit");
    const Real point = compute_ccr(s, Plane::diffraction, DetectorModel::point, Method::automatic).fwhm.fwhm;
    const Real integ = compute_ccr(s, Plane::diffraction, DetectorModel::integrating, Method::automatic).fwhm.fwhm;
    CHECK(point < 0.85 * integ);
  }

  TEST_CASE("method and detector combinations are checked") {
    const Scenario s = build_scenario("fig4");
    CHECK_THROWS_AS(compute_ccr(s, Plane::ghost, DetectorModel::point, Method::fresnel), InvalidArgument);
    CHECK_THROWS_AS(compute_ccr(s, Plane::ghost, DetectorModel::integrating, Method::fresnel), InvalidArgument);
    CHECK_THROWS_AS(compute_ccr(s, Plane::diffraction, DetectorModel::point, Method::direct), InvalidArgument);
    CHECK(parse_method("auto") == Method::automatic);
    CHECK(parse_plane(to_string(Plane::ghost)) == Plane::ghost);
    CHECK(parse_detector(to_string(DetectorModel::point)) == DetectorModel::point);
    CHECK_THROWS_AS(parse_plane("object"), InvalidArgument);
  }

  TEST_CASE("incoherent decomposition") {
    const Scenario s = build_scenario("fig3_noslit");
    const GridSpec grid = default_grid(s, Plane::diffraction, 513);

    SUBCASE("the on-axis component is the point-detector pattern") {
      const IncoherentDecomposition d = decompose_incoherent_sum(s, {-1e-4, 0.0, 1e-4}, grid);
      CHECK(d.weights == std::vector<Real>{0.5e-4, 1e-4, 0.5e-4});
      const IntensityProfile on_axis = peak_normalize(d.components[1]);
      const CcrProfile point = ccr_diffraction_point(s, grid, Method::fresnel);
      CHECK(oracle::compare_profiles(on_axis, point.profile, 1e-6) < 1e-9);
    }

    SUBCASE("the centroid moves monotonically with the focal-plane position") {
      const IncoherentDecomposition d = decompose_incoherent_sum(s, {-2e-4, -1e-4, 0.0, 1e-4, 2e-4}, grid);
      for (std::size_t l = 0; l + 1 < d.components.size(); ++l) {
        CHECK(centroid(d.components[l]) < centroid(d.components[l + 1]));
      }
    }

    SUBCASE("dense sampling reproduces the integrating detector") {
      std::vector<Real> samples;
      for (int l = -200; l <= 200; ++l) samples.push_back(l * 1e-4);
      const IncoherentDecomposition d = decompose_incoherent_sum(s, samples, grid);
      const CcrProfile integ = ccr_diffraction_integrating(s, grid);
      CHECK(d.total.fwhm.fwhm == doctest::Approx(integ.fwhm.fwhm).epsilon(0.01));
    }

    CHECK_THROWS_AS(decompose_incoherent_sum(s, {0.0, 1e-4}, grid), InvalidArgument);
    CHECK_THROWS_AS(decompose_incoherent_sum(s, {0.0, 2e-4, 1e-4}, grid), InvalidArgument);
  }
}
