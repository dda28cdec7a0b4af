#pragma once

#include <algorithm>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ghostsim/common.hpp"

namespace ghostsim {

/// Experiment geometry and beam parameters, SI units throughout.
///
/// Distances are measured along the unfolded optical axis from the SPDC
/// crystal: the signal arm reaches the ghost image plane at d2 and the
/// diffraction plane at d3; the idler arm reaches lens L1 at d1 and the idler
/// slit a further s_o beyond it.
struct Scenario {
  Real lambda = 0;  ///< degenerate signal/idler wavelength
  Real a_p = 0;     ///< pump field radius, exp(-x^2/a_p^2)
  Real d1 = 0;
  Real d2 = 0;
  Real d3 = 0;
  Real s_o = 0;
  Real f_l1 = 0;  ///< imaging lens L1
  Real f_c = 0;   ///< idler collector lens L2
  Real m = 0;     ///< (d1 + d2) / s_o
  Real w = 0;     ///< idler slit full width
  /// Full width of a physical slit in the ghost image plane; empty when the
  /// signal arm is unobstructed.
  std::optional<Real> signal_slit;

  bool operator==(const Scenario&) const = default;
};

/// Field names in serialization order.
const std::vector<std::string>& scenario_keys();

/// Assigns a field from its textual value ("none" clears signal_slit).
/// Throws InvalidArgument on an unknown key or unparsable value. Does not
/// check invariants.
void set_field(Scenario& s, std::string_view key, std::string_view value);

/// Reads a numeric field by name; signal_slit reads as 0 when absent.
Real get_field(const Scenario& s, std::string_view key);

/// Throws InvalidArgument naming the first violated invariant.
void check_invariants(const Scenario& s);

struct PresetInfo {
  std::string name;
  std::string description;
  std::string provenance;
};

const std::vector<PresetInfo>& presets();

/// Resolves a preset and applies `key=value` overrides in order. Overrides of
/// d1, d2 or s_o recompute m unless m is itself overridden.
Scenario build_scenario(std::string_view preset, const std::vector<std::string>& overrides = {});

/// Applies `key=value` overrides to an existing scenario (same rules as
/// build_scenario) and checks the invariants.
Scenario apply_overrides(Scenario s, const std::vector<std::string>& overrides);

/// Uniform 1-D grid of transverse positions including both endpoints.
class GridSpec {
 public:
  GridSpec(Real x_min, Real x_max, int n_points);

  static GridSpec symmetric(Real half_width, int n_points) { return {-half_width, half_width, n_points}; }

  Real x_min() const { return x_min_; }
  Real x_max() const { return x_max_; }
  int size() const { return n_; }
  Real spacing() const { return (x_max_ - x_min_) / (n_ - 1); }
  Real max_abs() const { return std::max(-x_min_, x_max_); }
  Real operator[](int i) const { return i == n_ - 1 ? x_max_ : x_min_ + i * spacing(); }
  VectorXr nodes() const;

  bool operator==(const GridSpec&) const = default;

  static constexpr int kMinPoints = 16;

 private:
  Real x_min_;
  Real x_max_;
  int n_;
};

struct GeometryCheck {
  std::string name;
  Real value = 0;
  Real limit = 0;
  bool passed = false;
};

struct GeometryReport {
  std::vector<GeometryCheck> checks;

  const GeometryCheck& at(std::string_view name) const;
  bool all_passed() const;
};

inline constexpr std::string_view kThinLensCheck = "thin_lens";
inline constexpr std::string_view kMagnificationCheck = "magnification";
inline constexpr std::string_view kFraunhoferCheck = "fraunhofer";

/// Thin-lens residual (relative to 1/f_l1, limit 1e-9), magnification
/// residual (relative, limit 1e-12) and Fresnel number of the ghost image
/// m*w seen from the diffraction plane (limit 0.1).
GeometryReport validate_geometry(const Scenario& s);

/// `key = value` lines, SI units, `#` comments. Values are written in
/// shortest round-trip form so that read_scenario(write_scenario(s)) == s.
void write_scenario(std::ostream& out, const Scenario& s, std::string_view prefix = "");
Scenario read_scenario(std::istream& in);

/// Formats a double in its shortest round-trip representation.
std::string format_exact(Real value);

}  // namespace ghostsim
