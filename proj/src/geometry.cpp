#include "ghostsim/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

namespace ghostsim {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

Real parse_real(std::string_view key, std::string_view text) {
  text = trim(text);
  Real value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw InvalidArgument("invalid value for '" + std::string(key) + "': '" + std::string(text) + "'");
  }
  return value;
}

Real* field_ptr(Scenario& s, std::string_view key) {
  if (key == "lambda") return &s.lambda;
  if (key == "a_p") return &s.a_p;
  if (key == "d1") return &s.d1;
  if (key == "d2") return &s.d2;
  if (key == "d3") return &s.d3;
  if (key == "s_o") return &s.s_o;
  if (key == "f_l1") return &s.f_l1;
  if (key == "f_c") return &s.f_c;
  if (key == "m") return &s.m;
  if (key == "w") return &s.w;
  return nullptr;
}

// Baseline: the configuration of the original experiment (unit magnification).
Scenario baseline() {
  Scenario s;
  s.lambda = 702e-9;
  s.a_p = 1.5e-3;
  s.d1 = 0.255;
  s.d2 = 0.745;
  s.d3 = 1.245;
  s.s_o = 1.0;
  s.f_l1 = 0.5;
  s.f_c = 0.1;
  s.w = 160e-6;
  s.m = (s.d1 + s.d2) / s.s_o;
  return s;
}

// Ghost plane moved five times closer to the crystal, d1 unchanged.
Scenario large_na() {
  Scenario s = baseline();
  s.d2 = 0.149;
  s.d3 = 0.649;
  s.m = (s.d1 + s.d2) / s.s_o;
  return s;
}

Scenario with_slit(Scenario s) {
  s.signal_slit = s.w;
  return s;
}

}  // namespace

const std::vector<std::string>& scenario_keys() {
  static const std::vector<std::string> keys = {"lambda", "a_p", "d1", "d2",  "d3",         "s_o",
                                                "f_l1",   "f_c", "m",  "w",   "signal_slit"};
  return keys;
}

void set_field(Scenario& s, std::string_view key, std::string_view value) {
  key = trim(key);
  if (key == "signal_slit") {
    const auto v = trim(value);
    if (v == "none" || v == "None" || v.empty()) {
      s.signal_slit.reset();
    } else {
      s.signal_slit = parse_real(key, v);
    }
    return;
  }
  Real* field = field_ptr(s, key);
  if (field == nullptr) throw InvalidArgument("unknown scenario field '" + std::string(key) + "'");
  *field = parse_real(key, value);
}

Real get_field(const Scenario& s, std::string_view key) {
  if (key == "signal_slit") return s.signal_slit.value_or(0.0);
  Real* field = field_ptr(const_cast<Scenario&>(s), key);
  if (field == nullptr) throw InvalidArgument("unknown scenario field '" + std::string(key) + "'");
  return *field;
}

void check_invariants(const Scenario& s) {
  const std::pair<const char*, Real> lengths[] = {{"lambda", s.lambda}, {"a_p", s.a_p}, {"d1", s.d1},
                                                  {"d2", s.d2},         {"d3", s.d3},   {"s_o", s.s_o},
                                                  {"f_l1", s.f_l1},     {"f_c", s.f_c}, {"m", s.m},
                                                  {"w", s.w}};
  for (const auto& [name, value] : lengths) {
    if (!(value > 0) || !std::isfinite(value)) {
      throw InvalidArgument(std::string("invariant violated: ") + name + " must be positive (got " +
                            format_exact(value) + ")");
    }
  }
  if (!(s.d3 > s.d2)) throw InvalidArgument("invariant violated: d3 must exceed d2");
  if (s.signal_slit && !(*s.signal_slit > 0)) {
    throw InvalidArgument("invariant violated: signal_slit must be positive or none");
  }
  const Real m_geom = (s.d1 + s.d2) / s.s_o;
  if (std::abs(s.m - m_geom) > 1e-12 * m_geom) {
    throw InvalidArgument("invariant violated: m must equal (d1 + d2)/s_o = " + format_exact(m_geom));
  }
}

const std::vector<PresetInfo>& presets() {
  static const std::vector<PresetInfo> list = {
      {"fig3_noslit", "baseline geometry, no signal slit (diffraction plane)",
       "d2, d3, s_o, M, f and pump diameter from the experiment; lambda = 702 nm and d1 = 255 mm inferred"},
      {"fig3_slit", "baseline geometry, 160 um slit in the ghost image plane",
       "as fig3_noslit; slit width equal to the idler slit"},
      {"fig4", "baseline geometry, ghost image plane", "as fig3_noslit"},
      {"fig5", "large aperture (d2 = 149 mm), ghost image plane",
       "d2 from the experiment text; d1 held at 255 mm gives m = 0.404; d3 - d2 kept at 500 mm"},
      {"fig6_noslit", "large aperture, no signal slit (diffraction plane)", "as fig5"},
      {"fig6_slit", "large aperture, 160 um signal slit (diffraction plane)", "as fig5"},
      {"fig8", "large aperture, ghost image plane, point idler detector", "as fig5"},
      {"fig9_noslit", "large aperture, point idler detector, no signal slit", "as fig5"},
      {"fig9_slit", "large aperture, point idler detector, 160 um signal slit", "as fig5"},
      {"custom", "baseline geometry as a starting point for --set overrides", "as fig3_noslit"},
  };
  return list;
}

Scenario build_scenario(std::string_view preset, const std::vector<std::string>& overrides) {
  Scenario s;
  if (preset == "fig3_noslit" || preset == "fig4" || preset == "custom") {
    s = baseline();
  } else if (preset == "fig3_slit") {
    s = with_slit(baseline());
  } else if (preset == "fig5" || preset == "fig6_noslit" || preset == "fig8" || preset == "fig9_noslit") {
    s = large_na();
  } else if (preset == "fig6_slit" || preset == "fig9_slit") {
    s = with_slit(large_na());
  } else {
    throw InvalidArgument("unknown preset '" + std::string(preset) + "'");
  }

  return apply_overrides(std::move(s), overrides);
}

Scenario apply_overrides(Scenario s, const std::vector<std::string>& overrides) {
  bool m_set = false;
  bool geometry_set = false;
  for (const auto& item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidArgument("override must be key=value: '" + item + "'");
    const auto key = trim(std::string_view(item).substr(0, eq));
    set_field(s, key, std::string_view(item).substr(eq + 1));
    m_set |= key == "m";
    geometry_set |= key == "d1" || key == "d2" || key == "s_o";
  }
  if (geometry_set && !m_set && s.s_o > 0) s.m = (s.d1 + s.d2) / s.s_o;
  check_invariants(s);
  return s;
}

GridSpec::GridSpec(Real x_min, Real x_max, int n_points) : x_min_(x_min), x_max_(x_max), n_(n_points) {
  if (!(x_min < x_max) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
    throw InvalidArgument("grid requires x_min < x_max");
  }
  if (n_points < kMinPoints) throw InvalidArgument("grid requires at least 16 points");
}

VectorXr GridSpec::nodes() const {
  VectorXr x(n_);
  for (int i = 0; i < n_; ++i) x[i] = (*this)[i];
  return x;
}

const GeometryCheck& GeometryReport::at(std::string_view name) const {
  const auto it = std::find_if(checks.begin(), checks.end(), [&](const auto& c) { return c.name == name; });
  if (it == checks.end()) throw InvalidArgument("no geometry check named '" + std::string(name) + "'");
  return *it;
}

bool GeometryReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

GeometryReport validate_geometry(const Scenario& s) {
  GeometryReport report;
  const Real s_i = s.d1 + s.d2;

  const Real thin_lens = std::abs(1.0 / s.s_o + 1.0 / s_i - 1.0 / s.f_l1) * s.f_l1;
  report.checks.push_back({std::string(kThinLensCheck), thin_lens, 1e-9, thin_lens <= 1e-9});

  const Real magnification = std::abs(s.m - s_i / s.s_o) / (s_i / s.s_o);
  report.checks.push_back({std::string(kMagnificationCheck), magnification, 1e-12, magnification <= 1e-12});

  const Real half_image = 0.5 * s.m * s.w;
  const Real fresnel_number = half_image * half_image / (s.lambda * (s.d3 - s.d2));
  report.checks.push_back({std::string(kFraunhoferCheck), fresnel_number, 0.1, fresnel_number < 0.1});
  return report;
}

std::string format_exact(Real value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

void write_scenario(std::ostream& out, const Scenario& s, std::string_view prefix) {
  for (const auto& key : scenario_keys()) {
    out << prefix << key << " = ";
    if (key == "signal_slit") {
      out << (s.signal_slit ? format_exact(*s.signal_slit) : "none");
    } else {
      out << format_exact(get_field(s, key));
    }
    out << '\n';
  }
}

Scenario read_scenario(std::istream& in) {
  Scenario s;
  std::vector<std::string> seen;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) throw InvalidArgument("expected 'key = value', got '" + line + "'");
    const auto key = trim(view.substr(0, eq));
    set_field(s, key, view.substr(eq + 1));
    seen.emplace_back(key);
  }
  for (const auto& key : scenario_keys()) {
    if (std::find(seen.begin(), seen.end(), key) == seen.end()) {
      throw InvalidArgument("scenario file is missing '" + key + "'");
    }
  }
  check_invariants(s);
  return s;
}

}  // namespace ghostsim
