#include "asymphot/rates.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "asymphot/errors.hpp"

namespace asymphot {

namespace {

AsymptoticKind out_kind(Exit exit) {
  return exit == Exit::left ? AsymptoticKind::out_left : AsymptoticKind::out_right;
}

std::size_t exit_index(Exit exit) { return exit == Exit::left ? 0 : 1; }

// Signal/idler asymptotic-out amplitudes for both exits, and the pump in-left mode.
struct ModeAmplitudes {
  std::array<CavityAmplitudes, 2> signal;
  std::array<CavityAmplitudes, 2> idler;
  CavityAmplitudes pump;
};

ModeAmplitudes solve_all(const CavityStructure& structure, const ModeSet& modes, double k1,
                         double k2, double k_pump) {
  ModeAmplitudes a;
  const double K1 = modes.material(ModeRole::signal, k1);
  const double K2 = modes.material(ModeRole::idler, k2);
  const double KP = modes.material(ModeRole::pump, k_pump);
  for (Exit exit : {Exit::left, Exit::right}) {
    a.signal[exit_index(exit)] = solve_mode(structure, k1, K1, out_kind(exit));
    a.idler[exit_index(exit)] = solve_mode(structure, k2, K2, out_kind(exit));
  }
  a.pump = solve_mode(structure, k_pump, KP, AsymptoticKind::in_left);
  return a;
}

void require_positive_wavenumbers(double k1, double k2, double k3) {
  if (!(k1 > 0.0) || !(k2 > 0.0) || !(k3 > 0.0)) {
    throw DomainError("coupling: wavenumbers must be positive");
  }
}

}  // namespace

void EffectiveCoupling::validate() const {
  if (!(g_eff > 0.0) || !std::isfinite(g_eff)) {
    throw ConfigError(ConfigError::Category::invariant, "coupling.g_eff must be positive");
  }
}

void DetectorEnvelope::validate() const {
  if (enabled && (!(width > 0.0) || !std::isfinite(width) || !std::isfinite(center))) {
    throw ConfigError(ConfigError::Category::invariant, "envelope width must be positive");
  }
}

double detector_envelope(const DetectorEnvelope& env, double k1) {
  if (!env.enabled) return 1.0;
  const double x = (k1 - env.center) / env.width;
  return std::exp(-0.5 * x * x);
}

std::string ChannelPair::label() const {
  auto ch = [](Exit e) { return e == Exit::left ? 'L' : 'R'; };
  return std::string{ch(signal), ch(idler)};
}

cplx coupling_spdc(const CavityStructure& structure, const ModeSet& modes,
                   const EffectiveCoupling& coupling, double k1, double k2, double k3,
                   ChannelPair pair, const PolingProfile& profile, bool counter_terms) {
  require_positive_wavenumbers(k1, k2, k3);
  const double K1 = modes.material(ModeRole::signal, k1);
  const double K2 = modes.material(ModeRole::idler, k2);
  const double K3 = modes.material(ModeRole::pump, k3);
  const auto signal = solve_mode(structure, k1, K1, out_kind(pair.signal));
  const auto idler = solve_mode(structure, k2, K2, out_kind(pair.idler));
  const auto pump = solve_mode(structure, k3, K3, AsymptoticKind::in_left);
  const auto overlap = overlap_spdc(signal, idler, pump, mismatch_spdc(modes, k1, k2, k3),
                                    structure.length, profile, counter_terms);
  return coupling.g_eff * std::sqrt(k1 * k2 * k3) * overlap.total;
}

cplx coupling_sfwm(const CavityStructure& structure, const ModeSet& modes,
                   const EffectiveCoupling& coupling, double k1, double k2, double k_pump,
                   ChannelPair pair) {
  require_positive_wavenumbers(k1, k2, k_pump);
  const double K1 = modes.material(ModeRole::signal, k1);
  const double K2 = modes.material(ModeRole::idler, k2);
  const double KP = modes.material(ModeRole::pump, k_pump);
  const auto signal = solve_mode(structure, k1, K1, out_kind(pair.signal));
  const auto idler = solve_mode(structure, k2, K2, out_kind(pair.idler));
  const auto pump = solve_mode(structure, k_pump, KP, AsymptoticKind::in_left);
  const auto overlap = overlap_sfwm(signal, idler, pump, pump,
                                    mismatch_sfwm(modes, k1, k2, k_pump, k_pump),
                                    structure.length);
  return coupling.g_eff * std::sqrt(k1 * k2) * k_pump * overlap.total;
}

void PairSource::validate() const {
  structure.validate();
  modes.validate();
  coupling.validate();
  envelope.validate();
  poling.validate();
  if (!(k_pump > 0.0) || !std::isfinite(k_pump)) {
    throw ConfigError(ConfigError::Category::invariant, "pump wavenumber must be positive");
  }
}

double PairSource::idler_wavenumber(double k1) const {
  return process == Process::spdc ? k_pump - k1 : 2.0 * k_pump - k1;
}

double PairSource::signal_upper_bound() const {
  return process == Process::spdc ? k_pump : 2.0 * k_pump;
}

std::array<double, 4> spectral_point(const PairSource& source, double k1) {
  const double k2 = source.idler_wavenumber(k1);
  require_positive_wavenumbers(k1, k2, source.k_pump);
  const ModeAmplitudes amps = solve_all(source.structure, source.modes, k1, k2, source.k_pump);
  const double eta = detector_envelope(source.envelope, k1);
  const double g = source.coupling.g_eff;

  std::array<double, 4> out{};
  if (source.process == Process::spdc) {
    const MismatchSet mm = mismatch_spdc(source.modes, k1, k2, source.k_pump);
    const double prefactor = g * g * k1 * k2 * source.k_pump * eta;
    for (std::size_t c = 0; c < kAllChannelPairs.size(); ++c) {
      const ChannelPair pair = kAllChannelPairs[c];
      const auto overlap = overlap_spdc(amps.signal[exit_index(pair.signal)],
                                        amps.idler[exit_index(pair.idler)], amps.pump, mm,
                                        source.structure.length, source.poling,
                                        source.counter_terms);
      out[c] = prefactor * std::norm(overlap.total);
    }
  } else {
    const MismatchSet mm = mismatch_sfwm(source.modes, k1, k2, source.k_pump, source.k_pump);
    const double prefactor = g * g * k1 * k2 * source.k_pump * source.k_pump * eta;
    for (std::size_t c = 0; c < kAllChannelPairs.size(); ++c) {
      const ChannelPair pair = kAllChannelPairs[c];
      const auto overlap = overlap_sfwm(amps.signal[exit_index(pair.signal)],
                                        amps.idler[exit_index(pair.idler)], amps.pump, amps.pump,
                                        mm, source.structure.length);
      out[c] = prefactor * std::norm(overlap.total);
    }
  }
  for (double v : out) {
    if (!std::isfinite(v)) {
      throw NumericalError("non-finite spectral rate at k1 = " + std::to_string(k1) + " rad/um");
    }
  }
  return out;
}

std::size_t SpectralResult::singular_count() const {
  return static_cast<std::size_t>(std::count(singular.begin(), singular.end(), true));
}

NormalizationRecord SpectralResult::normalization(std::size_t channel) const {
  const auto& values = raw.at(channel);
  NormalizationRecord record;
  if (!values.empty()) record.raw_max = *std::max_element(values.begin(), values.end());
  record.normalized = record.raw_max > 0.0;
  return record;
}

std::vector<double> SpectralResult::normalized(std::size_t channel) const {
  std::vector<double> out = raw.at(channel);
  const NormalizationRecord record = normalization(channel);
  if (!record.normalized) return out;
  for (double& v : out) v /= record.raw_max;
  return out;
}

std::vector<double> SpectralResult::raw_mixed() const {
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = raw[2][i] + raw[3][i];
  return out;
}

SpectralResult spectral_rate(const PairSource& source, const WavenumberGrid& grid,
                             const Execution& exec) {
  source.validate();
  const double upper = source.signal_upper_bound();
  if (!(grid.k_min > 0.0) || !(grid.k_max < upper)) {
    throw ConfigError(ConfigError::Category::invariant,
                      "signal grid must lie inside (0, " + std::to_string(upper) + ") rad/um");
  }
  SpectralResult result;
  result.grid = grid;
  for (auto& channel : result.raw) channel.assign(grid.size(), 0.0);
  std::vector<char> singular(grid.size(), 0);

  parallel_for(grid.size(), exec, [&](std::size_t i) {
    try {
      const auto point = spectral_point(source, grid.values[i]);
      for (std::size_t c = 0; c < point.size(); ++c) result.raw[c][i] = point[c];
    } catch (const ResonanceSingularity&) {
      singular[i] = 1;
    }
  });
  result.singular.assign(singular.begin(), singular.end());
  return result;
}

SpectralResult spectral_rate_spdc(const CavityStructure& structure, const ModeSet& modes,
                                  const EffectiveCoupling& coupling, const DetectorEnvelope& env,
                                  double k_pump, const WavenumberGrid& grid,
                                  const PolingProfile& profile, bool counter_terms,
                                  const Execution& exec) {
  PairSource source{Process::spdc, structure, modes,        coupling,
                    env,           profile,   counter_terms, k_pump};
  return spectral_rate(source, grid, exec);
}

SpectralResult spectral_rate_sfwm(const CavityStructure& structure, const ModeSet& modes,
                                  const EffectiveCoupling& coupling, const DetectorEnvelope& env,
                                  double k_pump, const WavenumberGrid& grid,
                                  const Execution& exec) {
  PairSource source{Process::sfwm, structure, modes, coupling, env, PolingProfile{}, false, k_pump};
  return spectral_rate(source, grid, exec);
}

double trapezoid(std::span<const double> values, double step) {
  if (values.size() < 2) return 0.0;
  double interior = 0.0;
  for (std::size_t i = 1; i + 1 < values.size(); ++i) interior += values[i];
  return step * (interior + 0.5 * (values.front() + values.back()));
}

std::array<double, 4> total_rate(const SpectralResult& spectral) {
  if (spectral.grid.size() < 3) {
    throw ConfigError(ConfigError::Category::invariant,
                      "total rate needs at least 3 grid points");
  }
  if (spectral.singular_count() > 0) {
    throw NumericalError("total rate: " + std::to_string(spectral.singular_count()) +
                         " singular grid point(s) in the integration window");
  }
  std::array<double, 4> totals{};
  const double step = spectral.grid.step();
  for (std::size_t c = 0; c < totals.size(); ++c) totals[c] = trapezoid(spectral.raw[c], step);
  return totals;
}

void QuadratureControls::validate() const {
  using Cat = ConfigError::Category;
  if (initial_count < 3) throw ConfigError(Cat::invariant, "quadrature.initial_count must be >= 3");
  if (!(tolerance > 0.0)) throw ConfigError(Cat::invariant, "quadrature.tolerance must be positive");
  if (max_points < initial_count) {
    throw ConfigError(Cat::invariant, "quadrature.max_points must be >= quadrature.initial_count");
  }
}

ConvergedRate converged_total_rate(const PairSource& source, double k_min, double k_max,
                                   const QuadratureControls& controls, const Execution& exec) {
  controls.validate();
  WavenumberGrid grid = grid_between(k_min, k_max, controls.initial_count);
  SpectralResult spectral = spectral_rate(source, grid, exec);
  ConvergedRate result;
  result.totals = total_rate(spectral);
  result.points = grid.size();

  while (true) {
    const std::size_t next = 2 * result.points - 1;
    if (next > controls.max_points) {
      result.cap_hit = true;
      return result;
    }
    // Only the new midpoints need evaluating.
    const double fine_step = (k_max - k_min) / static_cast<double>(next - 1);
    WavenumberGrid mids;
    mids.values.resize(result.points - 1);
    for (std::size_t i = 0; i < mids.values.size(); ++i) {
      mids.values[i] = k_min + fine_step * static_cast<double>(2 * i + 1);
    }
    mids.k_min = mids.values.front();
    mids.k_max = mids.values.back();
    if (mids.values.size() == 1) mids.k_max = mids.k_min + fine_step;
    const SpectralResult mid_spectral = spectral_rate(source, mids, exec);
    if (mid_spectral.singular_count() > 0) {
      throw NumericalError("total rate: singular grid point(s) while refining the quadrature");
    }

    std::array<double, 4> refined{};
    double largest = 0.0;
    for (std::size_t c = 0; c < refined.size(); ++c) {
      double mid_sum = 0.0;
      for (double v : mid_spectral.raw[c]) mid_sum += v;
      // T(h/2) = T(h)/2 + (h/2) * sum of midpoints.
      refined[c] = 0.5 * result.totals[c] + fine_step * mid_sum;
      largest = std::max(largest, std::abs(refined[c]));
    }

    double worst = 0.0;
    for (std::size_t c = 0; c < refined.size(); ++c) {
      const double floor = 1e-12 * largest;
      const double scale = std::max(std::abs(refined[c]), floor);
      const double change = std::abs(refined[c] - result.totals[c]);
      if (scale > 0.0) worst = std::max(worst, change / scale);
    }
    result.totals = refined;
    result.points = next;
    result.relative_change = worst;
    ++result.doublings;
    if (worst < controls.tolerance) return result;
  }
}

}  // namespace asymphot
