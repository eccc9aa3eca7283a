#pragma once

#include <string>
#include <vector>

#include "asymphot/dispersion.hpp"
#include "asymphot/transfer.hpp"

namespace asymphot {

/// sin(x)/x, with sinc(0) = 1.
double sinc(double x);

/// Square-wave modulation of the nonlinear coefficient,
/// gamma(z) = sign(sin(2 pi (z - offset) / period)).
struct PolingProfile {
  bool enabled = false;
  double period = 0.0;  // um
  double offset = 0.0;  // um

  void validate() const;

  friend bool operator==(const PolingProfile&, const PolingProfile&) = default;
};

/// +1 or -1; +1 when poling is disabled and at the domain walls themselves.
double poling_gamma(const PolingProfile& profile, double z);

/// 2 pi / |dK|. Throws AlreadyPhaseMatchedError for dK = 0.
double qpm_period(double dK);

/// Integral of gamma(z) exp(i dK z) over [-length/2, length/2].
///
/// Unpoled this is length * sinc(dK length / 2). Poled, each domain contributes its
/// closed-form exponential integral; whole periods are summed as a geometric series.
cplx phase_integral(double dK, double length, const PolingProfile& profile);

/// Phase mismatches of the three-wave (or four-wave) interaction, rad/um.
///   dK   = K3 - K1 - K2      (SFWM: K3 + K4 - K1 - K2)
///   dK1  = K3 + K1 - K2
///   dK2  = K3 - K1 + K2
///   dK12 = K3 + K1 + K2
/// K1 is the signal, K2 the idler, K3 (and K4) the pump.
struct MismatchSet {
  double dK = 0.0;
  double dK1 = 0.0;
  double dK2 = 0.0;
  double dK12 = 0.0;
};

MismatchSet mismatch_spdc(const ModeSet& modes, double k1, double k2, double k3);
MismatchSet mismatch_sfwm(const ModeSet& modes, double k1, double k2, double k3, double k4);

/// Propagation directions (+1 right-moving, -1 left-moving) of the signal, idler
/// and pump plane waves contributing to one overlap term.
struct TermSigns {
  int signal = 1;
  int idler = 1;
  int pump = 1;

  /// e.g. "(+,-,+)"
  std::string label() const;

  friend bool operator==(const TermSigns&, const TermSigns&) = default;
};

struct OverlapTerm {
  TermSigns signs;
  double mismatch = 0.0;  // exponent coefficient of the z integral, rad/um
  cplx value;             // um
};

/// Longitudinal overlap integral and its decomposition into plane-wave terms.
struct OverlapResult {
  cplx total;
  std::vector<OverlapTerm> terms;

  /// Term with the given signs, or nullptr when it was not included.
  const OverlapTerm* find(const TermSigns& signs) const;
};

/// SPDC overlap of conj(phi_S) conj(phi_I) phi_P over the cavity.
///
/// With counter_terms off only the co-propagating (+,+,+) and (-,-,-) terms are kept;
/// with it on, all eight direction combinations are included.
OverlapResult overlap_spdc(const CavityAmplitudes& signal, const CavityAmplitudes& idler,
                           const CavityAmplitudes& pump, const MismatchSet& mismatch,
                           double length, const PolingProfile& profile, bool counter_terms);

/// Two-term SFWM overlap; both pump factors use their own amplitudes.
OverlapResult overlap_sfwm(const CavityAmplitudes& signal, const CavityAmplitudes& idler,
                           const CavityAmplitudes& pump3, const CavityAmplitudes& pump4,
                           const MismatchSet& mismatch, double length);

}  // namespace asymphot
