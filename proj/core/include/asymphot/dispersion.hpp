#pragma once

#include <cstddef>
#include <numbers>
#include <vector>

namespace asymphot {

/// Vacuum speed of light in m/s.
inline constexpr double kSpeedOfLight = 299792458.0;

/// Which form of the linearized material dispersion to evaluate.
///
/// `standard` is the first-order Taylor expansion about k_ref,
///     K(k) = n_ref k_ref + n_group (k - k_ref),
/// whose slope is the group index. `verbatim_paper` evaluates
///     K(k) = n_ref k + n_group (k - k_ref),
/// which agrees with `standard` at k = k_ref only.
enum class DispersionConvention { standard, verbatim_paper };

/// Linearized dispersion of one mode about a reference vacuum wavenumber.
/// Wavenumbers are in rad/um.
struct LinearDispersion {
  double n_ref = 1.0;
  double n_group = 1.0;
  double k_ref = 1.0;

  /// Throws ConfigError unless all fields are positive and finite.
  void validate() const;

  friend bool operator==(const LinearDispersion&, const LinearDispersion&) = default;
};

/// Material wavenumber K(k) in rad/um. Throws DomainError for k <= 0.
double material_wavenumber(const LinearDispersion& d, double k,
                           DispersionConvention convention = DispersionConvention::standard);

/// omega = c k in rad/s, for k in rad/um. Throws DomainError for k <= 0.
double angular_frequency(double k);

/// Vacuum wavenumber (rad/um) for a vacuum wavelength given in nm.
inline double wavenumber_from_wavelength_nm(double wavelength_nm) {
  return 2.0 * std::numbers::pi / (wavelength_nm * 1e-3);
}

enum class ModeRole { pump, signal, idler };

/// Per-mode dispersions for the three interacting fields plus the (dispersionless)
/// left and right channel indices.
struct ModeSet {
  LinearDispersion pump;
  LinearDispersion signal;
  LinearDispersion idler;
  double channel_left_index = 1.0;
  double channel_right_index = 1.0;
  DispersionConvention convention = DispersionConvention::standard;

  void validate() const;

  const LinearDispersion& mode(ModeRole role) const;

  /// K of the given mode at vacuum wavenumber k.
  double material(ModeRole role, double k) const {
    return material_wavenumber(mode(role), k, convention);
  }

  friend bool operator==(const ModeSet&, const ModeSet&) = default;
};

/// Reference wavenumbers for degenerate SPDC: pump at kP, signal and idler at kP/2.
ModeSet spdc_modes(double k_pump, double n_pump, double ng_pump, double n_signal,
                   double ng_signal, double n_idler, double ng_idler);

/// Uniform, strictly increasing grid of vacuum wavenumbers.
struct WavenumberGrid {
  double k_min = 0.0;
  double k_max = 0.0;
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double step() const { return (k_max - k_min) / static_cast<double>(values.size() - 1); }
};

/// Uniform grid on [center - half_width, center + half_width] with `count` points.
/// Throws ConfigError for count < 2 or half_width <= 0.
WavenumberGrid build_grid(double center, double half_width, std::size_t count);

/// Uniform grid on [k_min, k_max] with `count` points.
WavenumberGrid grid_between(double k_min, double k_max, std::size_t count);

}  // namespace asymphot
