#include "asymphot/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <utility>

#include "asymphot/errors.hpp"
#include "asymphot/overlap.hpp"
#include "asymphot/table.hpp"

namespace asymphot::cli {

namespace {

using Cat = ConfigError::Category;

[[noreturn]] void invalid(const std::string& key, const std::string& what) {
  throw ConfigError(Cat::invariant, key + ": " + what);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc{} || res.ptr != end || !std::isfinite(v)) {
    invalid(std::string(key), "expected a number, got '" + std::string(text) + "'");
  }
  return v;
}

long long parse_integer(std::string_view key, std::string_view text) {
  long long v = 0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc{} || res.ptr != end) {
    invalid(std::string(key), "expected an integer, got '" + std::string(text) + "'");
  }
  return v;
}

std::size_t parse_count(std::string_view key, std::string_view text) {
  const long long v = parse_integer(key, text);
  if (v < 0) invalid(std::string(key), "must be non-negative");
  return static_cast<std::size_t>(v);
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true") return true;
  if (text == "false") return false;
  invalid(std::string(key), "expected true or false, got '" + std::string(text) + "'");
}

std::optional<double> parse_auto(std::string_view key, std::string_view text) {
  if (text == "auto") return std::nullopt;
  return parse_double(key, text);
}

std::string format_auto(const std::optional<double>& v) {
  return v ? format_shortest(*v) : std::string("auto");
}

template <class F>
void for_each_item(std::string_view text, F&& f) {
  if (trim(text).empty()) return;
  std::size_t pos = 0;
  while (true) {
    const auto comma = text.find(',', pos);
    f(trim(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
}

template <class T>
std::string join(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    if constexpr (std::is_floating_point_v<T>) {
      out += format_shortest(values[i]);
    } else {
      out += std::to_string(values[i]);
    }
  }
  return out;
}

template <class E>
using NameTable = std::vector<std::pair<E, std::string_view>>;

const NameTable<Scenario> kScenarioNames{{Scenario::flat_spdc, "flat-spdc"},
                                         {Scenario::ppln_counter, "ppln-counter"},
                                         {Scenario::bragg_sfwm, "bragg-sfwm"},
                                         {Scenario::custom, "custom"}};
const NameTable<Process> kProcessNames{{Process::spdc, "spdc"}, {Process::sfwm, "sfwm"}};
const NameTable<MirrorKind> kMirrorNames{
    {MirrorKind::identity, "identity"}, {MirrorKind::flat, "flat"}, {MirrorKind::bragg, "bragg"}};
const NameTable<InterfaceForm> kInterfaceNames{{InterfaceForm::derived, "derived"},
                                               {InterfaceForm::verbatim_paper, "verbatim-paper"}};
const NameTable<DispersionConvention> kConventionNames{
    {DispersionConvention::standard, "standard"},
    {DispersionConvention::verbatim_paper, "verbatim-paper"}};
const NameTable<MismatchTarget> kTargetNames{{MismatchTarget::dK, "dK"},
                                             {MismatchTarget::dK1, "dK1"},
                                             {MismatchTarget::dK2, "dK2"},
                                             {MismatchTarget::dK12, "dK12"}};
const NameTable<SweepParameter> kSweepNames{{SweepParameter::none, "none"},
                                            {SweepParameter::length, "length"},
                                            {SweepParameter::reflection, "reflection"},
                                            {SweepParameter::layers, "layers"},
                                            {SweepParameter::poling_period, "poling-period"}};
const NameTable<SweepScale> kScaleNames{{SweepScale::absolute, "absolute"},
                                        {SweepScale::poling_periods, "poling-periods"}};

template <class E>
E parse_enum(std::string_view key, std::string_view text, const NameTable<E>& table) {
  for (const auto& [value, name] : table) {
    if (name == text) return value;
  }
  std::string options;
  for (const auto& entry : table) {
    if (!options.empty()) options += "|";
    options += entry.second;
  }
  invalid(std::string(key), "expected one of {" + options + "}, got '" + std::string(text) + "'");
}

template <class E>
std::string_view enum_name(E value, const NameTable<E>& table) {
  for (const auto& [v, name] : table) {
    if (v == value) return name;
  }
  return "?";
}

struct KeyDef {
  std::string name;
  std::function<void(ScenarioConfig&, std::string_view key, std::string_view value)> set;
  std::function<std::string(const ScenarioConfig&)> get;
};

template <class M>
KeyDef double_key(std::string name, M member) {
  return {std::move(name), [member](ScenarioConfig& c, std::string_view k, std::string_view v) {
            std::invoke(member, c) = parse_double(k, v);
          },
          [member](const ScenarioConfig& c) { return format_shortest(std::invoke(member, c)); }};
}

template <class M>
KeyDef auto_key(std::string name, M member) {
  return {std::move(name), [member](ScenarioConfig& c, std::string_view k, std::string_view v) {
            std::invoke(member, c) = parse_auto(k, v);
          },
          [member](const ScenarioConfig& c) { return format_auto(std::invoke(member, c)); }};
}

template <class M>
KeyDef bool_key(std::string name, M member) {
  return {std::move(name), [member](ScenarioConfig& c, std::string_view k, std::string_view v) {
            std::invoke(member, c) = parse_bool(k, v);
          },
          [member](const ScenarioConfig& c) {
            return std::string(std::invoke(member, c) ? "true" : "false");
          }};
}

template <class M>
KeyDef count_key(std::string name, M member) {
  return {std::move(name), [member](ScenarioConfig& c, std::string_view k, std::string_view v) {
            std::invoke(member, c) = parse_count(k, v);
          },
          [member](const ScenarioConfig& c) { return std::to_string(std::invoke(member, c)); }};
}

template <class E, class M>
KeyDef enum_key(std::string name, M member, const NameTable<E>& table) {
  return {std::move(name), [member, &table](ScenarioConfig& c, std::string_view k, std::string_view v) {
            std::invoke(member, c) = parse_enum(k, v, table);
          },
          [member, &table](const ScenarioConfig& c) {
            return std::string(enum_name(std::invoke(member, c), table));
          }};
}

KeyDef mode_double(std::string name, ModeConfig ScenarioConfig::*mode, double ModeConfig::*field) {
  return {std::move(name), [=](ScenarioConfig& c, std::string_view k, std::string_view v) {
            (c.*mode).*field = parse_double(k, v);
          },
          [=](const ScenarioConfig& c) { return format_shortest((c.*mode).*field); }};
}

KeyDef mode_kref(std::string name, ModeConfig ScenarioConfig::*mode) {
  return {std::move(name), [=](ScenarioConfig& c, std::string_view k, std::string_view v) {
            (c.*mode).k_ref = parse_auto(k, v);
          },
          [=](const ScenarioConfig& c) { return format_auto((c.*mode).k_ref); }};
}

const std::vector<KeyDef>& key_registry() {
  using C = ScenarioConfig;
  static const std::vector<KeyDef> keys = [] {
    std::vector<KeyDef> k;
    k.push_back(enum_key("process", &C::process, kProcessNames));
    k.push_back(double_key("pump.wavelength_nm", &C::pump_wavelength_nm));
    k.push_back(enum_key("structure.mirrors", &C::mirrors, kMirrorNames));
    k.push_back(double_key("structure.length_um", &C::length_um));
    k.push_back(double_key("structure.r1", &C::r1));
    k.push_back(double_key("structure.r2", &C::r2));
    k.push_back(double_key("structure.bragg.n1", &C::bragg_n1));
    k.push_back(double_key("structure.bragg.n2", &C::bragg_n2));
    k.push_back({"structure.bragg.layers",
                 [](C& c, std::string_view key, std::string_view v) {
                   c.bragg_layers = static_cast<int>(parse_integer(key, v));
                 },
                 [](const C& c) { return std::to_string(c.bragg_layers); }});
    k.push_back(auto_key("structure.bragg.period_um", &C::bragg_period_um));
    k.push_back(enum_key("structure.bragg.interface_form", &C::interface_form, kInterfaceNames));
    for (auto [prefix, mode] : {std::pair{"modes.pump.", &C::pump},
                                std::pair{"modes.signal.", &C::signal},
                                std::pair{"modes.idler.", &C::idler}}) {
      k.push_back(mode_double(std::string(prefix) + "n", mode, &ModeConfig::n));
      k.push_back(mode_double(std::string(prefix) + "ng", mode, &ModeConfig::ng));
      k.push_back(mode_kref(std::string(prefix) + "k_ref", mode));
    }
    k.push_back(double_key("channels.n_left", &C::channel_left_index));
    k.push_back(double_key("channels.n_right", &C::channel_right_index));
    k.push_back(enum_key("dispersion.convention", &C::convention, kConventionNames));
    k.push_back(bool_key("envelope.enabled", &C::envelope_enabled));
    k.push_back(auto_key("envelope.center", &C::envelope_center));
    k.push_back(double_key("envelope.sigma_rel", &C::envelope_sigma_rel));
    k.push_back(bool_key("poling.enabled", &C::poling_enabled));
    k.push_back(enum_key("poling.target", &C::poling_target, kTargetNames));
    k.push_back(auto_key("poling.period_um", &C::poling_period_um));
    k.push_back(auto_key("poling.offset_um", &C::poling_offset_um));
    k.push_back(bool_key("overlap.counter_terms", &C::counter_terms));
    k.push_back(double_key("coupling.g_eff", &C::g_eff));
    k.push_back(auto_key("grid.center", &C::grid_center));
    k.push_back(auto_key("grid.half_width", &C::grid_half_width));
    k.push_back(count_key("grid.count", &C::grid_count));
    k.push_back({"quadrature.initial_count",
                 [](C& c, std::string_view key, std::string_view v) {
                   c.quadrature.initial_count = parse_count(key, v);
                 },
                 [](const C& c) { return std::to_string(c.quadrature.initial_count); }});
    k.push_back({"quadrature.tolerance",
                 [](C& c, std::string_view key, std::string_view v) {
                   c.quadrature.tolerance = parse_double(key, v);
                 },
                 [](const C& c) { return format_shortest(c.quadrature.tolerance); }});
    k.push_back({"quadrature.max_points",
                 [](C& c, std::string_view key, std::string_view v) {
                   c.quadrature.max_points = parse_count(key, v);
                 },
                 [](const C& c) { return std::to_string(c.quadrature.max_points); }});
    k.push_back(enum_key("sweep.parameter", &C::sweep_parameter, kSweepNames));
    k.push_back(double_key("sweep.start", &C::sweep_start));
    k.push_back(double_key("sweep.stop", &C::sweep_stop));
    k.push_back(count_key("sweep.steps", &C::sweep_steps));
    k.push_back(enum_key("sweep.scale", &C::sweep_scale, kScaleNames));
    k.push_back(enum_key("sweep.family", &C::family_parameter, kSweepNames));
    k.push_back({"sweep.family_values",
                 [](C& c, std::string_view key, std::string_view v) {
                   c.family_values.clear();
                   for_each_item(v, [&](std::string_view item) {
                     c.family_values.push_back(parse_double(key, item));
                   });
                 },
                 [](const C& c) { return join(c.family_values); }});
    k.push_back(bool_key("transmission.enabled", &C::transmission_enabled));
    k.push_back({"transmission.layers",
                 [](C& c, std::string_view key, std::string_view v) {
                   c.transmission_layers.clear();
                   for_each_item(v, [&](std::string_view item) {
                     c.transmission_layers.push_back(static_cast<int>(parse_integer(key, item)));
                   });
                 },
                 [](const C& c) { return join(c.transmission_layers); }});
    k.push_back(count_key("transmission.count", &C::transmission_count));
    k.push_back(double_key("transmission.half_width_rel", &C::transmission_half_width_rel));
    k.push_back(bool_key("output.normalize", &C::normalize));
    k.push_back(bool_key("output.spectrum", &C::emit_spectrum));
    k.push_back({"output.name",
                 [](C& c, std::string_view, std::string_view v) { c.output_name = std::string(v); },
                 [](const C& c) { return c.output_name; }});
    return k;
  }();
  return keys;
}

const KeyDef* find_key(std::string_view name) {
  for (const auto& def : key_registry()) {
    if (def.name == name) return &def;
  }
  return nullptr;
}

void require_positive(const std::string& key, double v) {
  if (!(v > 0.0)) invalid(key, "must be positive, got " + format_shortest(v));
}

void require_positive(const std::string& key, const std::optional<double>& v) {
  if (v) require_positive(key, *v);
}

void validate_mode(const std::string& prefix, const ModeConfig& m) {
  require_positive(prefix + "n", m.n);
  require_positive(prefix + "ng", m.ng);
  require_positive(prefix + "k_ref", m.k_ref);
}

}  // namespace

std::string_view to_string(Scenario s) { return enum_name(s, kScenarioNames); }
std::string_view to_string(SweepParameter p) { return enum_name(p, kSweepNames); }

void ScenarioConfig::validate() const {
  require_positive("pump.wavelength_nm", pump_wavelength_nm);
  require_positive("structure.length_um", length_um);
  if (!(std::abs(r1) < 1.0)) invalid("structure.r1", "|r| must be < 1");
  if (!(std::abs(r2) < 1.0)) invalid("structure.r2", "|r| must be < 1");
  require_positive("structure.bragg.n1", bragg_n1);
  require_positive("structure.bragg.n2", bragg_n2);
  if (bragg_layers < 1) invalid("structure.bragg.layers", "must be >= 1");
  require_positive("structure.bragg.period_um", bragg_period_um);
  validate_mode("modes.pump.", pump);
  validate_mode("modes.signal.", signal);
  validate_mode("modes.idler.", idler);
  require_positive("channels.n_left", channel_left_index);
  require_positive("channels.n_right", channel_right_index);
  require_positive("envelope.center", envelope_center);
  require_positive("envelope.sigma_rel", envelope_sigma_rel);
  require_positive("poling.period_um", poling_period_um);
  if (poling_enabled && process == Process::sfwm) {
    throw ConfigError(Cat::unsupported, "poling.enabled: poling is only modelled for spdc");
  }
  if (counter_terms && process == Process::sfwm) {
    throw ConfigError(Cat::unsupported, "overlap.counter_terms: only available for spdc");
  }
  require_positive("coupling.g_eff", g_eff);
  require_positive("grid.center", grid_center);
  require_positive("grid.half_width", grid_half_width);
  if (grid_count < 2) invalid("grid.count", "must be >= 2");
  quadrature.validate();

  if (sweep_parameter != SweepParameter::none) {
    if (sweep_steps < 1) invalid("sweep.steps", "must be >= 1");
    if (sweep_stop < sweep_start) invalid("sweep.stop", "must be >= sweep.start");
    if (sweep_steps == 1 && sweep_stop != sweep_start) {
      invalid("sweep.steps", "a single step needs sweep.start == sweep.stop");
    }
  }
  if (sweep_scale == SweepScale::poling_periods &&
      (sweep_parameter != SweepParameter::length || !poling_enabled)) {
    invalid("sweep.scale", "poling-periods needs sweep.parameter = length and poling enabled");
  }
  auto check_parameter = [&](const std::string& key, SweepParameter p) {
    if (p == SweepParameter::reflection && mirrors != MirrorKind::flat) {
      invalid(key, "reflection sweeps need structure.mirrors = flat");
    }
    if (p == SweepParameter::layers && mirrors != MirrorKind::bragg) {
      invalid(key, "layers sweeps need structure.mirrors = bragg");
    }
    if (p == SweepParameter::poling_period && !poling_enabled) {
      invalid(key, "poling-period sweeps need poling.enabled = true");
    }
  };
  check_parameter("sweep.parameter", sweep_parameter);
  check_parameter("sweep.family", family_parameter);
  if (family_parameter != SweepParameter::none) {
    if (sweep_parameter == SweepParameter::none) invalid("sweep.family", "needs sweep.parameter");
    if (family_parameter == sweep_parameter) invalid("sweep.family", "must differ from sweep.parameter");
    if (family_values.empty()) invalid("sweep.family_values", "must not be empty");
  }

  for (int n : transmission_layers) {
    if (n < 1) invalid("transmission.layers", "entries must be >= 1");
  }
  if (transmission_enabled && transmission_layers.empty()) {
    invalid("transmission.layers", "must not be empty");
  }
  if (transmission_count < 2) invalid("transmission.count", "must be >= 2");
  if (!(transmission_half_width_rel > 0.0 && transmission_half_width_rel < 1.0)) {
    invalid("transmission.half_width_rel", "must lie in (0, 1)");
  }
  if (output_name.empty() ||
      !std::all_of(output_name.begin(), output_name.end(), [](char ch) {
        return std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_' || ch == '.';
      })) {
    invalid("output.name", "must be a non-empty [A-Za-z0-9._-] string");
  }

  const Window w = resolved_window(*this);
  const double upper = (process == Process::spdc ? 1.0 : 2.0) * pump_wavenumber(*this);
  if (!(w.k_min > 0.0) || !(w.k_max < upper)) {
    invalid("grid.half_width", "signal window must lie inside (0, " + format_shortest(upper) + ")");
  }
}

ScenarioConfig parse_config(std::string_view text) {
  struct Entry {
    std::string key;
    std::string value;
    int line;
  };
  std::vector<Entry> entries;
  std::map<std::string, int> seen;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line_no;
    const std::string_view line = trim(raw);
    if (!line.empty() && line.front() != '#') {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        throw ConfigError(Cat::syntax, "expected 'key = value', got '" + std::string(line) + "'",
                          line_no);
      }
      const std::string key(trim(line.substr(0, eq)));
      const std::string value(trim(line.substr(eq + 1)));
      if (key.empty() || key.find_first_of(" \t") != std::string::npos) {
        throw ConfigError(Cat::syntax, "malformed key '" + key + "'", line_no);
      }
      if (auto it = seen.find(key); it != seen.end()) {
        throw ConfigError(Cat::syntax,
                          "duplicate key '" + key + "' (first on line " +
                              std::to_string(it->second) + ")",
                          line_no);
      }
      seen.emplace(key, line_no);
      entries.push_back({key, value, line_no});
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }

  ScenarioConfig config;
  config.scenario = Scenario::custom;
  for (const auto& e : entries) {
    if (e.key == "scenario") {
      try {
        config = preset(parse_enum(e.key, e.value, kScenarioNames));
      } catch (const ConfigError& err) {
        throw ConfigError(Cat::invariant, err.what(), e.line);
      }
    }
  }
  for (const auto& e : entries) {
    if (e.key == "scenario") continue;
    const KeyDef* def = find_key(e.key);
    if (!def) throw ConfigError(Cat::unknown_key, "'" + e.key + "'", e.line);
    try {
      def->set(config, e.key, e.value);
    } catch (const ConfigError& err) {
      throw ConfigError(Cat::invariant, err.what(), e.line);
    }
  }
  config.validate();
  return config;
}

std::string serialize_config(const ScenarioConfig& config) {
  std::ostringstream out;
  out << "scenario = " << to_string(config.scenario) << '\n';
  for (const auto& def : key_registry()) out << def.name << " = " << def.get(config) << '\n';
  return out.str();
}

ScenarioConfig preset(Scenario scenario) {
  ScenarioConfig c;
  c.scenario = scenario;
  switch (scenario) {
    case Scenario::flat_spdc:
      // lambda_P = 750 nm, r1 = -r2 = 0.3, l = 10.15 um, type-II LiNbO3-like indices,
      // Gaussian detector envelope at kP/2 with sigma = 0.04 k0.
      c.process = Process::spdc;
      c.mirrors = MirrorKind::flat;
      c.length_um = 10.15;
      c.r1 = 0.3;
      c.r2 = -0.3;
      c.pump = {2.18, 2.28, std::nullopt};
      c.signal = {2.14, 2.18, std::nullopt};
      c.idler = {2.22, 2.27, std::nullopt};
      c.envelope_enabled = true;
      c.envelope_sigma_rel = 0.04;
      c.grid_count = 401;
      c.sweep_parameter = SweepParameter::length;
      c.sweep_start = 9.0;
      c.sweep_stop = 11.0;
      c.sweep_steps = 201;
      c.family_parameter = SweepParameter::reflection;
      c.family_values = {0.0, 0.2, 0.4};
      c.output_name = "flat-spdc";
      break;
    case Scenario::ppln_counter:
      // Bare periodically poled crystal, poling period 2 pi / dK2 for counter-propagating pairs.
      c.process = Process::spdc;
      c.mirrors = MirrorKind::identity;
      c.r1 = 0.0;
      c.r2 = 0.0;
      c.length_um = 20.0;
      c.pump = {2.18, 2.28, std::nullopt};
      c.signal = {2.14, 2.18, std::nullopt};
      c.idler = {2.14, 2.18, std::nullopt};
      c.envelope_enabled = false;
      c.poling_enabled = true;
      c.poling_target = MismatchTarget::dK2;
      c.counter_terms = true;
      c.grid_count = 801;
      c.sweep_parameter = SweepParameter::length;
      c.sweep_scale = SweepScale::poling_periods;
      c.sweep_start = 10.0;
      c.sweep_stop = 200.0;
      c.sweep_steps = 20;
      c.output_name = "ppln-counter";
      break;
    case Scenario::bragg_sfwm:
      // l = 9.98 um, N = 30, n1 = 1.5, n2 = 1.6, stop band centred on kP/2. Indices are
      // the set that phase matches K_S = K_P/2, K_I = 3 K_P/2.
      c.process = Process::sfwm;
      c.mirrors = MirrorKind::bragg;
      c.r1 = 0.0;
      c.r2 = 0.0;
      c.length_um = 9.98;
      c.bragg_n1 = 1.5;
      c.bragg_n2 = 1.6;
      c.bragg_layers = 30;
      c.pump = {2.18, 2.28, std::nullopt};
      c.signal = {2.15, 2.18, std::nullopt};
      c.idler = {2.19, 2.32, std::nullopt};
      c.envelope_enabled = false;
      c.grid_half_width = 0.05 * 0.5 * wavenumber_from_wavelength_nm(750.0);
      c.grid_count = 4001;
      c.quadrature.initial_count = 2049;
      c.transmission_enabled = true;
      c.transmission_layers = {10, 20, 30};
      c.transmission_count = 200;
      c.transmission_half_width_rel = 0.2;
      c.output_name = "bragg-sfwm";
      break;
    case Scenario::custom:
      break;
  }
  return c;
}

ScenarioConfig preset(std::string_view name) {
  return preset(parse_enum("scenario", name, kScenarioNames));
}

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& [s, name] : kScenarioNames) {
    if (s != Scenario::custom) out.emplace_back(name);
  }
  return out;
}

std::string extract_config_from_csv(std::string_view csv_text) {
  constexpr std::string_view marker = "# cfg: ";
  std::string out;
  std::size_t pos = 0;
  while (pos < csv_text.size()) {
    const auto nl = csv_text.find('\n', pos);
    const auto line = csv_text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    if (line.starts_with(marker)) {
      out += line.substr(marker.size());
      out += '\n';
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  if (out.empty()) {
    throw ConfigError(Cat::syntax, "no '# cfg:' metadata lines found in CSV input");
  }
  return out;
}

ScenarioConfig with_parameter(const ScenarioConfig& config, SweepParameter parameter, double value) {
  ScenarioConfig c = config;
  switch (parameter) {
    case SweepParameter::none: break;
    case SweepParameter::length: c.length_um = value; break;
    case SweepParameter::reflection:
      c.r1 = value;
      c.r2 = -value;
      break;
    case SweepParameter::layers: c.bragg_layers = static_cast<int>(std::lround(value)); break;
    case SweepParameter::poling_period: c.poling_period_um = value; break;
  }
  return c;
}

double pump_wavenumber(const ScenarioConfig& config) {
  return wavenumber_from_wavelength_nm(config.pump_wavelength_nm);
}

double resolved_bragg_period(const ScenarioConfig& config) {
  if (config.bragg_period_um) return *config.bragg_period_um;
  // First-order stop band centred on kP/2.
  return 2.0 * std::numbers::pi /
         (effective_index(config.bragg_n1, config.bragg_n2) * pump_wavenumber(config));
}

ModeSet resolved_modes(const ScenarioConfig& config) {
  const double kP = pump_wavenumber(config);
  const double signal_ref = 0.5 * kP;
  const double idler_ref = config.process == Process::spdc ? 0.5 * kP : 1.5 * kP;
  ModeSet modes;
  modes.pump = {config.pump.n, config.pump.ng, config.pump.k_ref.value_or(kP)};
  modes.signal = {config.signal.n, config.signal.ng, config.signal.k_ref.value_or(signal_ref)};
  modes.idler = {config.idler.n, config.idler.ng, config.idler.k_ref.value_or(idler_ref)};
  modes.channel_left_index = config.channel_left_index;
  modes.channel_right_index = config.channel_right_index;
  modes.convention = config.convention;
  return modes;
}

double resolved_poling_period(const ScenarioConfig& config) {
  if (config.poling_period_um) return *config.poling_period_um;
  const double kP = pump_wavenumber(config);
  const ModeSet modes = resolved_modes(config);
  // Mismatch at the degenerate point.
  const MismatchSet mm = mismatch_spdc(modes, 0.5 * kP, 0.5 * kP, kP);
  switch (config.poling_target) {
    case MismatchTarget::dK: return qpm_period(mm.dK);
    case MismatchTarget::dK1: return qpm_period(mm.dK1);
    case MismatchTarget::dK2: return qpm_period(mm.dK2);
    case MismatchTarget::dK12: return qpm_period(mm.dK12);
  }
  return qpm_period(mm.dK2);
}

CavityStructure resolved_structure(const ScenarioConfig& config) {
  switch (config.mirrors) {
    case MirrorKind::identity: return bare_cavity(config.length_um);
    case MirrorKind::flat: return flat_cavity(config.r1, config.r2, config.length_um);
    case MirrorKind::bragg:
      return bragg_cavity(config.bragg_n1, config.bragg_n2, resolved_bragg_period(config),
                          config.bragg_layers, config.length_um, config.interface_form);
  }
  return bare_cavity(config.length_um);
}

DetectorEnvelope resolved_envelope(const ScenarioConfig& config) {
  DetectorEnvelope env;
  env.enabled = config.envelope_enabled;
  env.center = config.envelope_center.value_or(0.5 * pump_wavenumber(config));
  env.width = config.envelope_sigma_rel * env.center;
  return env;
}

PolingProfile resolved_poling(const ScenarioConfig& config) {
  PolingProfile p;
  if (!config.poling_enabled) return p;
  p.enabled = true;
  p.period = resolved_poling_period(config);
  p.offset = config.poling_offset_um.value_or(-0.5 * config.length_um);
  return p;
}

PairSource make_source(const ScenarioConfig& config) {
  PairSource source;
  source.process = config.process;
  source.structure = resolved_structure(config);
  source.modes = resolved_modes(config);
  source.coupling = {config.g_eff};
  source.envelope = resolved_envelope(config);
  source.poling = resolved_poling(config);
  source.counter_terms = config.counter_terms;
  source.k_pump = pump_wavenumber(config);
  return source;
}

Window resolved_window(const ScenarioConfig& config) {
  const DetectorEnvelope env = resolved_envelope(config);
  const double center =
      config.grid_center.value_or(env.enabled ? env.center : 0.5 * pump_wavenumber(config));
  const double half =
      config.grid_half_width.value_or(env.enabled ? 5.0 * env.width : 0.2 * center);
  return {center - half, center + half};
}

}  // namespace asymphot::cli
