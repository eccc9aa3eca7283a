#include "asymphot/dispersion.hpp"

#include <cmath>
#include <string>

#include "asymphot/errors.hpp"

namespace asymphot {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ConfigError(ConfigError::Category::invariant,
                      std::string(name) + " must be positive and finite, got " +
                          std::to_string(value));
  }
}

}  // namespace

void LinearDispersion::validate() const {
  require_positive(n_ref, "n_ref");
  require_positive(n_group, "n_group");
  require_positive(k_ref, "k_ref");
}

double material_wavenumber(const LinearDispersion& d, double k, DispersionConvention convention) {
  if (!(k > 0.0)) {
    throw DomainError("material_wavenumber: vacuum wavenumber must be positive, got " +
                      std::to_string(k));
  }
  const double detuning = k - d.k_ref;
  switch (convention) {
    case DispersionConvention::verbatim_paper:
      return d.n_ref * k + d.n_group * detuning;
    case DispersionConvention::standard:
      break;
  }
  return d.n_ref * d.k_ref + d.n_group * detuning;
}

double angular_frequency(double k) {
  if (!(k > 0.0)) {
    throw DomainError("angular_frequency: vacuum wavenumber must be positive, got " +
                      std::to_string(k));
  }
  // k is in rad/um; 1e6 um per m.
  return kSpeedOfLight * k * 1e6;
}

void ModeSet::validate() const {
  pump.validate();
  signal.validate();
  idler.validate();
  require_positive(channel_left_index, "channel_left_index");
  require_positive(channel_right_index, "channel_right_index");
}

const LinearDispersion& ModeSet::mode(ModeRole role) const {
  switch (role) {
    case ModeRole::signal: return signal;
    case ModeRole::idler: return idler;
    case ModeRole::pump: break;
  }
  return pump;
}

ModeSet spdc_modes(double k_pump, double n_pump, double ng_pump, double n_signal,
                   double ng_signal, double n_idler, double ng_idler) {
  ModeSet modes;
  modes.pump = {n_pump, ng_pump, k_pump};
  modes.signal = {n_signal, ng_signal, 0.5 * k_pump};
  modes.idler = {n_idler, ng_idler, 0.5 * k_pump};
  return modes;
}

WavenumberGrid grid_between(double k_min, double k_max, std::size_t count) {
  if (count < 2) {
    throw ConfigError(ConfigError::Category::invariant,
                      "grid needs at least 2 points, got " + std::to_string(count));
  }
  if (!(k_max > k_min)) {
    throw ConfigError(ConfigError::Category::invariant, "grid upper bound must exceed lower bound");
  }
  WavenumberGrid grid;
  grid.k_min = k_min;
  grid.k_max = k_max;
  grid.values.resize(count);
  const double span = k_max - k_min;
  const double denom = static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    grid.values[i] = k_min + span * (static_cast<double>(i) / denom);
  }
  grid.values.back() = k_max;
  return grid;
}

WavenumberGrid build_grid(double center, double half_width, std::size_t count) {
  if (!(half_width > 0.0)) {
    throw ConfigError(ConfigError::Category::invariant, "grid half-width must be positive");
  }
  return grid_between(center - half_width, center + half_width, count);
}

}  // namespace asymphot
