#include "asymphot/overlap.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "asymphot/errors.hpp"

namespace asymphot {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Integral of exp(i dK z) over [a, b], written so that dK -> 0 is exact.
cplx segment_integral(double dK, double a, double b) {
  const double width = b - a;
  return std::polar(width * sinc(0.5 * dK * width), 0.5 * dK * (a + b));
}

// Sum_{j=0}^{count-1} q^j with q = exp(i theta).
cplx geometric_sum(double theta, long count) {
  if (count <= 0) return {};
  const double half = 0.5 * theta;
  const double s = std::sin(half);
  if (std::abs(s) < 1e-6) {
    cplx acc{};
    const cplx q = std::polar(1.0, theta);
    cplx term{1.0, 0.0};
    for (long j = 0; j < count; ++j) {
      acc += term;
      term *= q;
    }
    return acc;
  }
  const double magnitude = std::sin(half * static_cast<double>(count)) / s;
  return std::polar(magnitude, half * static_cast<double>(count - 1));
}

// Integral of gamma(z) exp(i dK z) over [a, b] where [a, b] lies within one period
// starting at `period_start`; splits at the domain wall in the middle.
cplx partial_period(double dK, double a, double b, double period_start, double period) {
  const double wall = period_start + 0.5 * period;
  cplx acc{};
  if (a < wall) acc += segment_integral(dK, a, std::min(b, wall));
  if (b > wall) acc -= segment_integral(dK, std::max(a, wall), b);
  return acc;
}

}  // namespace

double sinc(double x) {
  const double ax = std::abs(x);
  if (ax < 1e-6) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

void PolingProfile::validate() const {
  if (enabled && (!(period > 0.0) || !std::isfinite(period))) {
    throw ConfigError(ConfigError::Category::invariant, "poling period must be positive");
  }
  if (enabled && !std::isfinite(offset)) {
    throw ConfigError(ConfigError::Category::invariant, "poling offset must be finite");
  }
}

double poling_gamma(const PolingProfile& profile, double z) {
  if (!profile.enabled) return 1.0;
  // Position within the period, in [0, period).
  const double u = z - profile.offset;
  double frac = u / profile.period - std::floor(u / profile.period);
  if (frac >= 1.0) frac = 0.0;
  if (frac == 0.0 || frac == 0.5) return 1.0;
  return frac < 0.5 ? 1.0 : -1.0;
}

double qpm_period(double dK) {
  if (dK == 0.0) throw AlreadyPhaseMatchedError();
  return kTwoPi / std::abs(dK);
}

cplx phase_integral(double dK, double length, const PolingProfile& profile) {
  if (!(length > 0.0)) {
    throw DomainError("phase_integral: length must be positive");
  }
  if (!profile.enabled) return {length * sinc(0.5 * dK * length), 0.0};
  profile.validate();

  const double lo = -0.5 * length;
  const double hi = 0.5 * length;
  const double period = profile.period;

  // Period boundaries are offset + j * period. First one at or before lo:
  const double j_lo = std::floor((lo - profile.offset) / period);
  const double first_start = profile.offset + j_lo * period;

  const double head_end = std::min(first_start + period, hi);
  cplx acc = partial_period(dK, lo, head_end, first_start, period);
  if (head_end >= hi) return acc;

  const double full_start = first_start + period;
  const long full_periods = static_cast<long>(std::floor((hi - full_start) / period));
  if (full_periods > 0) {
    const cplx one_period = partial_period(dK, full_start, full_start + period, full_start, period);
    acc += one_period * geometric_sum(dK * period, full_periods);
  }

  const double tail_start = full_start + static_cast<double>(full_periods) * period;
  if (hi > tail_start) {
    acc += partial_period(dK, tail_start, hi, tail_start, period);
  }
  return acc;
}

MismatchSet mismatch_spdc(const ModeSet& modes, double k1, double k2, double k3) {
  const double K1 = modes.material(ModeRole::signal, k1);
  const double K2 = modes.material(ModeRole::idler, k2);
  const double K3 = modes.material(ModeRole::pump, k3);
  return {K3 - K1 - K2, K3 + K1 - K2, K3 - K1 + K2, K3 + K1 + K2};
}

MismatchSet mismatch_sfwm(const ModeSet& modes, double k1, double k2, double k3, double k4) {
  const double K1 = modes.material(ModeRole::signal, k1);
  const double K2 = modes.material(ModeRole::idler, k2);
  const double K3 = modes.material(ModeRole::pump, k3);
  const double K4 = modes.material(ModeRole::pump, k4);
  return {K3 + K4 - K1 - K2, K3 + K1 - K2, K3 - K1 + K2, K3 + K1 + K2};
}

std::string TermSigns::label() const {
  auto ch = [](int s) { return s > 0 ? '+' : '-'; };
  return std::string{'(', ch(signal), ',', ch(idler), ',', ch(pump), ')'};
}

const OverlapTerm* OverlapResult::find(const TermSigns& signs) const {
  for (const auto& term : terms) {
    if (term.signs == signs) return &term;
  }
  return nullptr;
}

namespace {

cplx directed(const CavityAmplitudes& a, int sign) { return sign > 0 ? a.e_plus : a.e_minus; }

struct TermSpec {
  TermSigns signs;
  double MismatchSet::*mismatch;
  int orientation;  // +1 for exp(+i dK z), -1 for exp(-i dK z)
};

// Order and mismatch assignment of the eight direction combinations.
constexpr std::array<TermSpec, 8> kSpdcTerms{{
    {{+1, +1, +1}, &MismatchSet::dK, +1},
    {{-1, -1, -1}, &MismatchSet::dK, -1},
    {{-1, +1, +1}, &MismatchSet::dK1, +1},
    {{+1, -1, -1}, &MismatchSet::dK1, -1},
    {{+1, -1, +1}, &MismatchSet::dK2, +1},
    {{-1, +1, -1}, &MismatchSet::dK2, -1},
    {{-1, -1, +1}, &MismatchSet::dK12, +1},
    {{+1, +1, -1}, &MismatchSet::dK12, -1},
}};

}  // namespace

OverlapResult overlap_spdc(const CavityAmplitudes& signal, const CavityAmplitudes& idler,
                           const CavityAmplitudes& pump, const MismatchSet& mismatch,
                           double length, const PolingProfile& profile, bool counter_terms) {
  OverlapResult result;
  const std::size_t n_terms = counter_terms ? kSpdcTerms.size() : 2;
  result.terms.reserve(n_terms);
  for (std::size_t i = 0; i < n_terms; ++i) {
    const TermSpec& spec = kSpdcTerms[i];
    const cplx amplitude = std::conj(directed(signal, spec.signs.signal)) *
                           std::conj(directed(idler, spec.signs.idler)) *
                           directed(pump, spec.signs.pump);
    const double dK = spec.orientation * (mismatch.*spec.mismatch);
    OverlapTerm term{spec.signs, dK, {}};
    if (amplitude != cplx{}) term.value = amplitude * phase_integral(dK, length, profile);
    result.total += term.value;
    result.terms.push_back(term);
  }
  return result;
}

OverlapResult overlap_sfwm(const CavityAmplitudes& signal, const CavityAmplitudes& idler,
                           const CavityAmplitudes& pump3, const CavityAmplitudes& pump4,
                           const MismatchSet& mismatch, double length) {
  const double envelope = length * sinc(0.5 * mismatch.dK * length);
  const cplx forward = std::conj(signal.e_plus) * std::conj(idler.e_plus) * pump3.e_plus *
                       pump4.e_plus;
  const cplx backward = std::conj(signal.e_minus) * std::conj(idler.e_minus) * pump3.e_minus *
                        pump4.e_minus;
  OverlapResult result;
  result.terms.push_back({{+1, +1, +1}, mismatch.dK, envelope * forward});
  result.terms.push_back({{-1, -1, -1}, -mismatch.dK, envelope * backward});
  result.total = result.terms[0].value + result.terms[1].value;
  return result;
}

}  // namespace asymphot
