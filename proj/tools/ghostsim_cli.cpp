// Command-line front end: run, sweep, validate, presets.
//
// Exit status: 0 success, 1 invalid request or failed validation, 2 I/O error.

#include <cstdlib>
#include <iostream>
#include <sstream>

#include <unistd.h>

#include "CLI11.hpp"
#include "ghostsim/run.hpp"
#include "ghostsim/validation.hpp"

namespace {

using namespace ghostsim;

struct Common {
  std::string scenario = "custom";
  std::string scenario_file;
  std::vector<std::string> overrides;
  std::string plane = "diffraction";
  std::string detector = "integrating";
  std::string method = "auto";
  double half_width = 0;
  int points = Resolution{}.output_points;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--scenario", c.scenario, "preset name (see `presets`)");
  cmd->add_option("--scenario-file", c.scenario_file, "key = value scenario file; replaces --scenario");
  cmd->add_option("--set", c.overrides, "override a scenario field, key=value in SI units (repeatable)")
      ->allow_extra_args(false);
  cmd->add_option("--plane", c.plane, "ghost | diffraction");
  cmd->add_option("--detector", c.detector, "integrating | point");
  cmd->add_option("--method", c.method, "auto | direct | parseval | fraunhofer | fresnel");
  cmd->add_option("--half-width", c.half_width, "output grid half-width in meters (default: automatic)");
  cmd->add_option("--points", c.points, "output grid points");
}

RunRequest to_request(const Common& c) {
  RunRequest r;
  r.preset = c.scenario;
  if (!c.scenario_file.empty()) r.scenario_file = c.scenario_file;
  r.overrides = c.overrides;
  r.plane = parse_plane(c.plane);
  r.detector = parse_detector(c.detector);
  r.method = parse_method(c.method);
  if (c.half_width > 0) r.grid_half_width = c.half_width;
  r.grid_points = c.points;
  return r;
}

std::vector<Real> parse_values(const std::string& text) {
  std::vector<Real> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos) {
      throw InvalidArgument("invalid sweep value '" + item + "'");
    }
    values.push_back(v);
  }
  return values;
}

bool use_color() { return std::getenv("NO_COLOR") == nullptr && ::isatty(STDOUT_FILENO); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ghostsim: wave-optics simulator of entangled-photon ghost imaging"};
  app.require_subcommand(1);

  Common run_opts;
  std::string out_path, svg_path;
  auto* run = app.add_subcommand("run", "compute one correlated counting-rate profile and write CSV");
  add_common(run, run_opts);
  run->add_option("--out", out_path, "CSV output path")->required();
  run->add_option("--svg", svg_path, "optional SVG plot path");

  Common sweep_opts;
  std::string vary, values_text, sweep_out;
  auto* sweep_cmd = app.add_subcommand("sweep", "FWHM as one scenario field varies");
  add_common(sweep_cmd, sweep_opts);
  sweep_cmd->add_option("--vary", vary, "scenario field to vary")->required();
  sweep_cmd->add_option("--values", values_text, "comma-separated values in SI units")->required();
  sweep_cmd->add_option("--metric", "only fwhm is supported")->check(CLI::IsMember({"fwhm"}));
  sweep_cmd->add_option("--out", sweep_out, "CSV output path (default: stdout)");

  std::vector<std::string> only;
  std::string profile = "default";
  auto* validate = app.add_subcommand("validate", "run the acceptance checks and print a report");
  validate->add_option("--only", only, "criterion ids to run (default: all)");
  validate->add_option("--tolerance-profile", profile, "tolerance profile")->check(CLI::IsMember({"default"}));

  std::string show;
  auto* list = app.add_subcommand("presets", "list built-in scenarios with provenance notes");
  list->add_option("--show", show, "print one preset as a scenario file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*run) {
      const ResolvedRun resolved = resolve(to_request(run_opts));
      const CcrProfile ccr = execute(resolved);
      std::ostringstream csv;
      write_profile_csv(csv, resolved, ccr);
      write_file_atomic(out_path, csv.str());
      if (!svg_path.empty()) write_file_atomic(svg_path, render_svg(ccr));
      std::cout << "fwhm_m = " << format_sci(ccr.fwhm.fwhm) << '\n';
      return 0;
    }
    if (*sweep_cmd) {
      const RunRequest base = to_request(sweep_opts);
      const SweepResult result = sweep(base, vary, parse_values(values_text));
      std::ostringstream csv;
      write_sweep_csv(csv, base, result);
      if (sweep_out.empty()) {
        std::cout << csv.str();
      } else {
        write_file_atomic(sweep_out, csv.str());
      }
      return 0;
    }
    if (*validate) {
      const ValidationReport report = run_validation(only);
      print_report(std::cout, report, use_color());
      return report.passed() ? 0 : 1;
    }
    if (*list) {
      if (!show.empty()) {
        std::cout << "# preset " << show << '\n';
        write_scenario(std::cout, build_scenario(show));
        return 0;
      }
      for (const auto& p : presets()) {
        std::cout << p.name << "\n  " << p.description << "\n  provenance: " << p.provenance << '\n';
      }
      return 0;
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
