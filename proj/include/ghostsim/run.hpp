#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ghostsim/detection.hpp"

namespace ghostsim {

/// One plane, one detector model, one method.
struct RunRequest {
  std::string preset = "custom";
  std::optional<std::filesystem::path> scenario_file;  ///< replaces the preset when set
  std::vector<std::string> overrides;
  Plane plane = Plane::diffraction;
  DetectorModel detector = DetectorModel::integrating;
  Method method = Method::automatic;
  std::optional<Real> grid_half_width;
  int grid_points = Resolution{}.output_points;
};

/// The fully resolved inputs of a run, as recorded in a CSV header.
struct ResolvedRun {
  Scenario scenario;
  Plane plane = Plane::diffraction;
  DetectorModel detector = DetectorModel::integrating;
  Method method = Method::automatic;
  GridSpec grid{-1, 1, GridSpec::kMinPoints};
};

ResolvedRun resolve(const RunRequest& request);
CcrProfile execute(const ResolvedRun& run, const Resolution& res = {});

/// Lower-case scientific notation, 9 significant digits.
std::string format_sci(Real value);

/// `#`-prefixed header (every Scenario field, plane, detector, method, grid,
/// fwhm_m) followed by `x_meters,intensity` rows.
void write_profile_csv(std::ostream& out, const ResolvedRun& run, const CcrProfile& ccr);

/// Reconstructs the run from the header of a CSV written by write_profile_csv.
ResolvedRun read_run_header(std::istream& in);

/// Minimal 800x500 polyline plot with the ghost image of the idler slit
/// drawn as a dashed rectangle.
std::string render_svg(const CcrProfile& ccr);

/// Writes through a temporary file in the same directory and renames it into
/// place. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

struct SweepPoint {
  Real value = 0;
  Real fwhm = 0;
};

struct SweepResult {
  std::string field;
  std::vector<SweepPoint> points;
  std::optional<Real> loglog_slope;  ///< present when every value and width is positive
};

/// FWHM of the requested profile for each value of one numeric Scenario
/// field. Overrides are applied after the preset and before the swept value.
SweepResult sweep(const RunRequest& base, const std::string& field, const std::vector<Real>& values,
                  const Resolution& res = {});

void write_sweep_csv(std::ostream& out, const RunRequest& base, const SweepResult& result);

}  // namespace ghostsim
