#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "asymphot/dispersion.hpp"
#include "asymphot/rates.hpp"
#include "asymphot/transfer.hpp"

namespace asymphot::cli {

enum class Scenario { flat_spdc, ppln_counter, bragg_sfwm, custom };
enum class MirrorKind { identity, flat, bragg };
enum class SweepParameter { none, length, reflection, layers, poling_period };
enum class SweepScale { absolute, poling_periods };
enum class MismatchTarget { dK, dK1, dK2, dK12 };

std::string_view to_string(Scenario s);
std::string_view to_string(SweepParameter p);

/// Reference indices of one mode; k_ref defaults from the process when unset.
struct ModeConfig {
  double n = 2.0;
  double ng = 2.0;
  std::optional<double> k_ref;  // rad/um

  friend bool operator==(const ModeConfig&, const ModeConfig&) = default;
};

/// Fully resolved run description. Optional fields hold "auto" values that are
/// derived from the rest of the configuration at run time.
struct ScenarioConfig {
  Scenario scenario = Scenario::custom;
  Process process = Process::spdc;
  double pump_wavelength_nm = 750.0;

  // structure
  MirrorKind mirrors = MirrorKind::flat;
  double length_um = 10.15;
  double r1 = 0.3;
  double r2 = -0.3;
  double bragg_n1 = 1.5;
  double bragg_n2 = 1.6;
  int bragg_layers = 30;
  std::optional<double> bragg_period_um;
  InterfaceForm interface_form = InterfaceForm::derived;

  // modes
  ModeConfig pump{2.18, 2.28, std::nullopt};
  ModeConfig signal{2.14, 2.18, std::nullopt};
  ModeConfig idler{2.22, 2.27, std::nullopt};
  double channel_left_index = 1.0;
  double channel_right_index = 1.0;
  DispersionConvention convention = DispersionConvention::standard;

  // detector envelope; sigma = envelope_sigma_rel * center
  bool envelope_enabled = false;
  std::optional<double> envelope_center;
  double envelope_sigma_rel = 0.04;

  // poling
  bool poling_enabled = false;
  MismatchTarget poling_target = MismatchTarget::dK2;
  std::optional<double> poling_period_um;
  std::optional<double> poling_offset_um;
  bool counter_terms = false;

  double g_eff = 1.0;

  // spectrum grid (also the integration window for total rates)
  std::optional<double> grid_center;
  std::optional<double> grid_half_width;
  std::size_t grid_count = 401;
  QuadratureControls quadrature;

  // sweep
  SweepParameter sweep_parameter = SweepParameter::none;
  double sweep_start = 0.0;
  double sweep_stop = 0.0;
  std::size_t sweep_steps = 1;
  SweepScale sweep_scale = SweepScale::absolute;
  SweepParameter family_parameter = SweepParameter::none;
  std::vector<double> family_values;

  // Bragg transmission table
  bool transmission_enabled = false;
  std::vector<int> transmission_layers{10, 20, 30};
  std::size_t transmission_count = 200;
  double transmission_half_width_rel = 0.2;

  // output
  bool normalize = true;
  bool emit_spectrum = true;
  std::string output_name = "custom";

  /// Throws ConfigError (category invariant) naming the offending key.
  void validate() const;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Parses a line-oriented `dotted.key = value` document. Lines starting with `#`
/// are comments. The `scenario` key selects the preset the other keys override;
/// without it the document describes a `custom` scenario.
/// Errors: syntax (with line), unknown key (with line), invalid value.
ScenarioConfig parse_config(std::string_view text);

/// Canonical document listing every key; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ScenarioConfig& config);

/// Built-in presets carrying the published parameter sets.
ScenarioConfig preset(Scenario scenario);
ScenarioConfig preset(std::string_view name);
std::vector<std::string> preset_names();

/// Config document embedded in a CSV file written by emit_csv.
std::string extract_config_from_csv(std::string_view csv_text);

/// Copy of `config` with one sweep parameter set to `value`.
ScenarioConfig with_parameter(const ScenarioConfig& config, SweepParameter parameter,
                              double value);

// Values derived from a configuration.
double pump_wavenumber(const ScenarioConfig& config);
double resolved_bragg_period(const ScenarioConfig& config);
double resolved_poling_period(const ScenarioConfig& config);
ModeSet resolved_modes(const ScenarioConfig& config);
CavityStructure resolved_structure(const ScenarioConfig& config);
DetectorEnvelope resolved_envelope(const ScenarioConfig& config);
PolingProfile resolved_poling(const ScenarioConfig& config);
PairSource make_source(const ScenarioConfig& config);

struct Window {
  double k_min;
  double k_max;
};
/// Signal-wavenumber window of spectra and total-rate integrals.
Window resolved_window(const ScenarioConfig& config);

}  // namespace asymphot::cli
