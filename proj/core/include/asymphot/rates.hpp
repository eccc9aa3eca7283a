#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "asymphot/dispersion.hpp"
#include "asymphot/overlap.hpp"
#include "asymphot/parallel.hpp"
#include "asymphot/transfer.hpp"

namespace asymphot {

/// Single multiplicative constant standing in for the transverse overlap, pump
/// amplitude and physical constants. Only relative rates are meaningful.
struct EffectiveCoupling {
  double g_eff = 1.0;

  void validate() const;
  friend bool operator==(const EffectiveCoupling&, const EffectiveCoupling&) = default;
};

/// Gaussian detector response exp(-(k - center)^2 / (2 width^2)).
struct DetectorEnvelope {
  bool enabled = false;
  double center = 1.0;  // rad/um
  double width = 1.0;   // rad/um

  void validate() const;
  friend bool operator==(const DetectorEnvelope&, const DetectorEnvelope&) = default;
};

double detector_envelope(const DetectorEnvelope& env, double k1);

enum class Exit { left, right };

/// Output channels of the signal and idler photons.
struct ChannelPair {
  Exit signal = Exit::right;
  Exit idler = Exit::right;

  std::string label() const;  // "RR", "LL", "RL", "LR"
  friend bool operator==(const ChannelPair&, const ChannelPair&) = default;
};

inline constexpr std::array<ChannelPair, 4> kAllChannelPairs{{
    {Exit::right, Exit::right},
    {Exit::left, Exit::left},
    {Exit::right, Exit::left},
    {Exit::left, Exit::right},
}};

enum class Process { spdc, sfwm };

/// J for SPDC: g_eff sqrt(k1 k2 k3) I_XX'(k1, k2, k3), pump entering from the left.
cplx coupling_spdc(const CavityStructure& structure, const ModeSet& modes,
                   const EffectiveCoupling& coupling, double k1, double k2, double k3,
                   ChannelPair pair, const PolingProfile& profile, bool counter_terms);

/// J for SFWM: g_eff sqrt(k1 k2) kP I^SFWM_XX'(k1, k2, kP, kP).
cplx coupling_sfwm(const CavityStructure& structure, const ModeSet& modes,
                   const EffectiveCoupling& coupling, double k1, double k2, double k_pump,
                   ChannelPair pair);

/// Everything that determines the on-shell spectral rate S_XX'(k1).
struct PairSource {
  Process process = Process::spdc;
  CavityStructure structure;
  ModeSet modes;
  EffectiveCoupling coupling;
  DetectorEnvelope envelope;
  PolingProfile poling;
  bool counter_terms = false;
  double k_pump = 1.0;

  void validate() const;

  /// Idler wavenumber fixed by energy conservation: kP - k1 (SPDC), 2 kP - k1 (SFWM).
  double idler_wavenumber(double k1) const;

  /// Open interval of admissible signal wavenumbers: (0, kP) or (0, 2 kP).
  double signal_upper_bound() const;
};

/// eta(k1) |J_XX'|^2 for every entry of kAllChannelPairs, in that order.
/// Throws ResonanceSingularity (with k) when a cavity mode is singular.
std::array<double, 4> spectral_point(const PairSource& source, double k1);

struct NormalizationRecord {
  double raw_max = 0.0;
  bool normalized = false;  // false when the array is identically zero
};

/// Spectral rates for the four channel pairs on a signal-wavenumber grid.
struct SpectralResult {
  WavenumberGrid grid;
  std::array<std::vector<double>, 4> raw;  // indexed like kAllChannelPairs
  std::vector<bool> singular;              // grid points where a mode was singular

  std::size_t singular_count() const;
  NormalizationRecord normalization(std::size_t channel) const;
  /// raw / raw_max (unchanged when raw is all zero).
  std::vector<double> normalized(std::size_t channel) const;
  /// Elementwise raw[RL] + raw[LR].
  std::vector<double> raw_mixed() const;
};

/// Evaluates spectral_point over the grid. Singular points are flagged and left at 0.
SpectralResult spectral_rate(const PairSource& source, const WavenumberGrid& grid,
                             const Execution& exec = {});

SpectralResult spectral_rate_spdc(const CavityStructure& structure, const ModeSet& modes,
                                  const EffectiveCoupling& coupling, const DetectorEnvelope& env,
                                  double k_pump, const WavenumberGrid& grid,
                                  const PolingProfile& profile, bool counter_terms,
                                  const Execution& exec = {});

SpectralResult spectral_rate_sfwm(const CavityStructure& structure, const ModeSet& modes,
                                  const EffectiveCoupling& coupling, const DetectorEnvelope& env,
                                  double k_pump, const WavenumberGrid& grid,
                                  const Execution& exec = {});

/// Composite trapezoid of uniformly spaced samples.
double trapezoid(std::span<const double> values, double step);

/// Trapezoid integral of each raw channel over the grid. Throws ConfigError with
/// fewer than 3 points and NumericalError when any point is singular.
std::array<double, 4> total_rate(const SpectralResult& spectral);

struct QuadratureControls {
  std::size_t initial_count = 257;
  double tolerance = 1e-3;
  std::size_t max_points = std::size_t{1} << 20;

  void validate() const;
  friend bool operator==(const QuadratureControls&, const QuadratureControls&) = default;
};

struct ConvergedRate {
  std::array<double, 4> totals{};
  std::size_t points = 0;
  double relative_change = 0.0;  // largest change at the final doubling
  int doublings = 0;
  bool cap_hit = false;
};

/// Total rates over [k_min, k_max], halving the step (reusing existing samples)
/// until every channel changes by less than `tolerance` relative, or the point
/// cap is reached.
ConvergedRate converged_total_rate(const PairSource& source, double k_min, double k_max,
                                   const QuadratureControls& controls, const Execution& exec = {});

}  // namespace asymphot
