#pragma once

#include <complex>
#include <span>
#include <variant>

namespace asymphot {

using cplx = std::complex<double>;

/// 2x2 complex transfer matrix acting on (right-moving, left-moving) plane-wave
/// amplitudes: (out+, out-) = M (in+, in-).
struct TransferMatrix2 {
  cplx m11{1.0, 0.0};
  cplx m12{0.0, 0.0};
  cplx m21{0.0, 0.0};
  cplx m22{1.0, 0.0};

  static TransferMatrix2 identity() { return {}; }

  cplx determinant() const { return m11 * m22 - m12 * m21; }
  bool finite() const;

  friend TransferMatrix2 operator*(const TransferMatrix2& a, const TransferMatrix2& b) {
    return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
            a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
  }
  friend bool operator==(const TransferMatrix2&, const TransferMatrix2&) = default;
};

/// Largest entrywise modulus of a - b.
double max_abs_diff(const TransferMatrix2& a, const TransferMatrix2& b);

/// Which second row to use for the dielectric interface matrix.
///
/// `derived` follows from continuity of the tangential fields written in terms of
/// the displacement field. `verbatim_paper` multiplies that row by exp(-2i K2 a);
/// it conserves energy but moves the Bragg stop band with the stack position.
enum class InterfaceForm { derived, verbatim_paper };

struct IdentityMirror {
  friend bool operator==(const IdentityMirror&, const IdentityMirror&) = default;
};

/// Lossless mirror with real reflection amplitude r, located at z = position (um).
struct FlatMirror {
  double r = 0.0;
  double position = 0.0;
  friend bool operator==(const FlatMirror&, const FlatMirror&) = default;
};

/// Alternating n1/n2 stack. Each period is an n1 -> n2 interface at z_m followed by
/// n2 -> n1 at z_m + period/2, with z_m = start + m * period for m = 0..layers
/// (layers + 1 periods in total).
struct BraggMirror {
  double n1 = 1.5;
  double n2 = 1.6;
  double period = 1.0;
  int layers = 1;
  double start = 0.0;
  InterfaceForm form = InterfaceForm::derived;

  /// z just past the last interface.
  double end() const { return start + (layers + 1) * period; }

  friend bool operator==(const BraggMirror&, const BraggMirror&) = default;
};

using MirrorSpec = std::variant<IdentityMirror, FlatMirror, BraggMirror>;

/// Throws ConfigError when the mirror parameters are out of range.
void validate(const MirrorSpec& mirror);

/// (1/t) [[1, r e^{-2iKa}], [r e^{2iKa}, 1]] with t = sqrt(1 - r^2).
TransferMatrix2 flat_mirror(double r, double position, double K);

/// U(a)^dagger M U(a) with U(a) = diag(e^{iKa}, e^{-iKa}).
TransferMatrix2 shift_frame(const TransferMatrix2& m, double a, double K);

/// Interface from index n1 (z < a) to n2 (z > a) for vacuum wavenumber k.
TransferMatrix2 interface_matrix(double n1, double n2, double position, double k,
                                 InterfaceForm form = InterfaceForm::derived);

TransferMatrix2 bragg_stack(const BraggMirror& spec, double k);

/// Product of elements ordered left to right in z; the rightmost element ends up
/// leftmost in the product. Throws ConfigError for an empty list.
TransferMatrix2 compose(std::span<const TransferMatrix2> elements);

/// Intensity transmission |det M / M11|^2. Throws SingularStructureError when M11 = 0.
double transmission(const TransferMatrix2& m);

/// Intensity reflection |M21 / M11|^2. Throws SingularStructureError when M11 = 0.
double reflection(const TransferMatrix2& m);

/// 2 n1 n2 / (n1 + n2).
double effective_index(double n1, double n2);

/// pi / (n_eff period).
double stopband_center(double n1, double n2, double period);

/// Transfer matrix of a mirror for a mode with vacuum wavenumber k and intracavity
/// material wavenumber K. Flat mirrors use K; Bragg stacks use their own indices.
TransferMatrix2 mirror_matrix(const MirrorSpec& mirror, double k, double K);

enum class AsymptoticKind { in_left, out_left, out_right };

/// Plane-wave amplitudes of one asymptotic mode in the left channel (f), the
/// cavity (e) and the right channel (g).
struct CavityAmplitudes {
  cplx e_plus;
  cplx e_minus;
  cplx f_plus;
  cplx f_minus;
  cplx g_plus;
  cplx g_minus;
};

/// Intracavity amplitudes from the closed-form solution of
///   (e+, e-) = M1 (f+, f-),  (g+, g-) = M2 (e+, e-)
/// under the boundary conditions selected by `kind`:
///   in_left:   f+ = 1, g- = 0
///   out_right: g+ = 1, f- = 0
///   out_left:  f- = 1, g+ = 0
/// Throws ResonanceSingularity when the closed-form denominator vanishes.
CavityAmplitudes solve_cavity(const TransferMatrix2& m1, const TransferMatrix2& m2,
                              AsymptoticKind kind);

/// Same boundary-value problem solved as a generic 6x6 linear system by Gaussian
/// elimination with partial pivoting. Test oracle for solve_cavity.
CavityAmplitudes solve_cavity_oracle(const TransferMatrix2& m1, const TransferMatrix2& m2,
                                     AsymptoticKind kind);

/// Two mirrors bounding a cavity of the given length (um) centred on z = 0.
struct CavityStructure {
  MirrorSpec left = IdentityMirror{};
  MirrorSpec right = IdentityMirror{};
  double length = 10.0;

  void validate() const;
};

/// Flat mirrors r1 at -length/2 and r2 at +length/2.
CavityStructure flat_cavity(double r1, double r2, double length);

/// Mirror-symmetric Bragg stacks whose n2 layers meet the cavity at -length/2
/// and +length/2.
CavityStructure bragg_cavity(double n1, double n2, double period, int layers, double length,
                             InterfaceForm form = InterfaceForm::derived);

CavityStructure bare_cavity(double length);

/// Asymptotic amplitudes of one mode inside `structure`.
CavityAmplitudes solve_mode(const CavityStructure& structure, double k, double K,
                            AsymptoticKind kind);

}  // namespace asymphot
