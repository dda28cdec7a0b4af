#include "ghostsim/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

#include <unistd.h>

namespace ghostsim {

ResolvedRun resolve(const RunRequest& request) {
  ResolvedRun run;
  if (request.scenario_file) {
    std::ifstream in(*request.scenario_file);
    if (!in) throw IoError("cannot read scenario file " + request.scenario_file->string());
    run.scenario = apply_overrides(read_scenario(in), request.overrides);
  } else {
    run.scenario = build_scenario(request.preset, request.overrides);
  }
  run.plane = request.plane;
  run.detector = request.detector;
  run.method = request.method;
  if (run.method == Method::automatic) {
    if (run.detector == DetectorModel::integrating) {
      run.method = Method::parseval;
    } else if (run.plane == Plane::diffraction) {
      run.method = Method::fresnel;
    }
  }
  if (request.grid_points < GridSpec::kMinPoints) throw InvalidArgument("--points must be at least 16");
  run.grid = request.grid_half_width ? GridSpec::symmetric(*request.grid_half_width, request.grid_points)
                                     : default_grid(run.scenario, run.plane, request.grid_points);
  return run;
}

CcrProfile execute(const ResolvedRun& run, const Resolution& res) {
  return compute_ccr(run.scenario, run.plane, run.detector, run.method, run.grid, res);
}

std::string format_sci(Real value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.8e", value);
  return buf;
}

void write_profile_csv(std::ostream& out, const ResolvedRun& run, const CcrProfile& ccr) {
  out << "# ghostsim correlated counting rate\n";
  write_scenario(out, run.scenario, "# ");
  out << "# plane = " << to_string(run.plane) << '\n'
      << "# detector = " << to_string(run.detector) << '\n'
      << "# method = " << to_string(run.method) << '\n'
      << "# grid_x_min = " << format_exact(run.grid.x_min()) << '\n'
      << "# grid_x_max = " << format_exact(run.grid.x_max()) << '\n'
      << "# grid_points = " << run.grid.size() << '\n'
      << "# fwhm_m = " << format_sci(ccr.fwhm.fwhm) << '\n'
      << "x_meters,intensity\n";
  for (int i = 0; i < ccr.profile.grid.size(); ++i) {
    out << format_sci(ccr.profile.grid[i]) << ',' << format_sci(ccr.profile.values[i]) << '\n';
  }
}

ResolvedRun read_run_header(std::istream& in) {
  std::ostringstream scenario_text;
  std::optional<Real> x_min, x_max;
  std::optional<int> points;
  ResolvedRun run;
  std::string line;
  while (std::getline(in, line) && !line.empty() && line.front() == '#') {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(1, eq - 1);
    std::string value = line.substr(eq + 1);
    key.erase(0, key.find_first_not_of(' '));
    key.erase(key.find_last_not_of(' ') + 1);
    value.erase(0, value.find_first_not_of(' '));
    if (key == "plane") {
      run.plane = parse_plane(value);
    } else if (key == "detector") {
      run.detector = parse_detector(value);
    } else if (key == "method") {
      run.method = parse_method(value);
    } else if (key == "grid_x_min") {
      x_min = std::stod(value);
    } else if (key == "grid_x_max") {
      x_max = std::stod(value);
    } else if (key == "grid_points") {
      points = std::stoi(value);
    } else if (key != "fwhm_m") {
      scenario_text << key << " = " << value << '\n';
    }
  }
  if (!x_min || !x_max || !points) throw InvalidArgument("CSV header has no grid description");
  std::istringstream scenario_in(scenario_text.str());
  run.scenario = read_scenario(scenario_in);
  run.grid = GridSpec(*x_min, *x_max, *points);
  return run;
}

std::string render_svg(const CcrProfile& ccr) {
  constexpr double kWidth = 800, kHeight = 500, kMargin = 50;
  const auto& grid = ccr.profile.grid;
  const double x0 = grid.x_min(), x1 = grid.x_max();
  const auto px = [&](double x) { return kMargin + (x - x0) / (x1 - x0) * (kWidth - 2 * kMargin); };
  const auto py = [&](double y) { return kHeight - kMargin - y * (kHeight - 2 * kMargin); };

  std::ostringstream svg;
  svg.setf(std::ios::fixed);
  svg.precision(2);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" viewBox=\"0 0 800 500\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"white\"/>\n"
      << "<line x1=\"" << kMargin << "\" y1=\"" << py(0) << "\" x2=\"" << kWidth - kMargin << "\" y2=\"" << py(0)
      << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << kMargin << "\" y1=\"" << py(0) << "\" x2=\"" << kMargin << "\" y2=\"" << py(1)
      << "\" stroke=\"black\"/>\n";

  const double half_image = 0.5 * ccr.scenario.m * ccr.scenario.w;
  if (half_image < x1) {
    svg << "<rect x=\"" << px(-half_image) << "\" y=\"" << py(1) << "\" width=\"" << px(half_image) - px(-half_image)
        << "\" height=\"" << py(0) - py(1) << "\" fill=\"none\" stroke=\"green\" stroke-dasharray=\"6,4\"/>\n";
  }

  svg << "<polyline fill=\"none\" stroke=\"red\" stroke-width=\"1.5\" points=\"";
  for (int i = 0; i < grid.size(); ++i) {
    svg << px(grid[i]) << ',' << py(ccr.profile.values[i]) << (i + 1 < grid.size() ? " " : "");
  }
  svg << "\"/>\n";

  svg.precision(3);
  svg << "<text x=\"" << kMargin << "\" y=\"" << kHeight - 15 << "\" font-size=\"12\">x from " << x0 * 1e3
      << " mm to " << x1 * 1e3 << " mm</text>\n"
      << "<text x=\"" << kWidth - kMargin - 200 << "\" y=\"30\" font-size=\"12\">FWHM = " << ccr.fwhm.fwhm * 1e3
      << " mm</text>\n"
      << "</svg>\n";
  return svg.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoError("output directory does not exist: " + dir.string());

  const fs::path temp = dir / ("." + path.filename().string() + ".tmp" + std::to_string(::getpid()));
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + temp.string());
    out << content;
    out.flush();
    if (!out) {
      fs::remove(temp, ec);
      throw IoError("failed while writing " + temp.string());
    }
  }
  fs::rename(temp, path, ec);
  if (ec) {
    fs::remove(temp, ec);
    throw IoError("cannot move output into place at " + path.string());
  }
}

SweepResult sweep(const RunRequest& base, const std::string& field, const std::vector<Real>& values,
                  const Resolution& res) {
  if (values.size() < 2) throw InvalidArgument("a sweep needs at least 2 values");
  const auto& keys = scenario_keys();
  if (std::find(keys.begin(), keys.end(), field) == keys.end()) {
    throw InvalidArgument("cannot sweep unknown field '" + field + "'");
  }
  SweepResult result;
  result.field = field;
  bool positive = true;
  for (const Real value : values) {
    RunRequest request = base;
    request.overrides.push_back(field + "=" + format_exact(value));
    const CcrProfile ccr = execute(resolve(request), res);
    result.points.push_back({value, ccr.fwhm.fwhm});
    positive &= value > 0 && ccr.fwhm.fwhm > 0;
  }
  if (positive && result.points.size() >= 3) {
    std::vector<std::pair<Real, Real>> pairs;
    for (const auto& p : result.points) pairs.emplace_back(p.value, p.fwhm);
    result.loglog_slope = fit_power_law(pairs);
  } else if (positive) {
    const auto& a = result.points.front();
    const auto& b = result.points.back();
    result.loglog_slope = std::log(b.fwhm / a.fwhm) / std::log(b.value / a.value);
  }
  return result;
}

void write_sweep_csv(std::ostream& out, const RunRequest& base, const SweepResult& result) {
  out << "# ghostsim sweep\n"
      << "# scenario = " << base.preset << '\n';
  for (const auto& o : base.overrides) out << "# set = " << o << '\n';
  out << "# plane = " << to_string(base.plane) << '\n'
      << "# detector = " << to_string(base.detector) << '\n'
      << "# method = " << to_string(base.method) << '\n'
      << result.field << ",fwhm_m\n";
  for (const auto& p : result.points) out << format_sci(p.value) << ',' << format_sci(p.fwhm) << '\n';
  if (result.loglog_slope) out << "# loglog_slope = " << format_sci(*result.loglog_slope) << '\n';
}

}  // namespace ghostsim
