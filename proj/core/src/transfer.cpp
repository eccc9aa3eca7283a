#include "asymphot/transfer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "asymphot/errors.hpp"

namespace asymphot {

namespace {

constexpr cplx kI{0.0, 1.0};

cplx phase(double angle) { return std::polar(1.0, angle); }

// Relative threshold below which a closed-form denominator is treated as zero.
constexpr double kSingularRelTol = 1e-14;

bool vanishes(cplx denominator, double scale) {
  return std::abs(denominator) <= kSingularRelTol * scale;
}

}  // namespace

bool TransferMatrix2::finite() const {
  for (const cplx& z : {m11, m12, m21, m22}) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

double max_abs_diff(const TransferMatrix2& a, const TransferMatrix2& b) {
  return std::max({std::abs(a.m11 - b.m11), std::abs(a.m12 - b.m12), std::abs(a.m21 - b.m21),
                   std::abs(a.m22 - b.m22)});
}

void validate(const MirrorSpec& mirror) {
  using Cat = ConfigError::Category;
  if (const auto* flat = std::get_if<FlatMirror>(&mirror)) {
    if (!(std::abs(flat->r) < 1.0)) {
      throw ConfigError(Cat::invariant, "flat mirror needs |r| < 1, got r = " +
                                            std::to_string(flat->r));
    }
  } else if (const auto* bragg = std::get_if<BraggMirror>(&mirror)) {
    if (!(bragg->n1 > 0.0) || !(bragg->n2 > 0.0)) {
      throw ConfigError(Cat::invariant, "Bragg indices must be positive");
    }
    if (!(bragg->period > 0.0)) {
      throw ConfigError(Cat::invariant, "Bragg period must be positive");
    }
    if (bragg->layers < 1) {
      throw ConfigError(Cat::invariant, "Bragg stack needs at least one layer");
    }
  }
}

TransferMatrix2 flat_mirror(double r, double position, double K) {
  validate(FlatMirror{r, position});
  const double inv_t = 1.0 / std::sqrt(1.0 - r * r);
  const double twice_phase = 2.0 * K * position;
  return {cplx(inv_t, 0.0), inv_t * r * phase(-twice_phase), inv_t * r * phase(twice_phase),
          cplx(inv_t, 0.0)};
}

TransferMatrix2 shift_frame(const TransferMatrix2& m, double a, double K) {
  // U = diag(u, conj(u)), u = e^{iKa}; U^dagger M U scales the off-diagonals only.
  const cplx u = phase(K * a);
  return {m.m11, m.m12 * std::conj(u) * std::conj(u), m.m21 * u * u, m.m22};
}

TransferMatrix2 interface_matrix(double n1, double n2, double position, double k,
                                 InterfaceForm form) {
  if (!(n1 > 0.0) || !(n2 > 0.0)) {
    throw ConfigError(ConfigError::Category::invariant, "interface indices must be positive");
  }
  const double rho = n1 / n2;
  const double prefactor = 1.0 / (2.0 * rho * rho);
  const double K1 = n1 * k;
  const double K2 = n2 * k;
  const double a = position;

  TransferMatrix2 m;
  m.m11 = prefactor * (1.0 + rho) * phase((K1 - K2) * a);
  m.m12 = prefactor * (1.0 - rho) * phase(-(K1 + K2) * a);
  switch (form) {
    case InterfaceForm::derived:
      m.m21 = prefactor * (1.0 - rho) * phase((K1 + K2) * a);
      m.m22 = prefactor * (1.0 + rho) * phase(-(K1 - K2) * a);
      break;
    case InterfaceForm::verbatim_paper:
      m.m21 = prefactor * (1.0 - rho) * phase((K1 - K2) * a);
      m.m22 = prefactor * (1.0 + rho) * phase(-(K1 + K2) * a);
      break;
  }
  return m;
}

TransferMatrix2 bragg_stack(const BraggMirror& spec, double k) {
  validate(spec);
  TransferMatrix2 total = TransferMatrix2::identity();
  for (int m = 0; m <= spec.layers; ++m) {
    const double z = spec.start + m * spec.period;
    const TransferMatrix2 up = interface_matrix(spec.n1, spec.n2, z, k, spec.form);
    const TransferMatrix2 down =
        interface_matrix(spec.n2, spec.n1, z + 0.5 * spec.period, k, spec.form);
    total = down * (up * total);
  }
  return total;
}

TransferMatrix2 compose(std::span<const TransferMatrix2> elements) {
  if (elements.empty()) {
    throw ConfigError(ConfigError::Category::invariant, "compose needs at least one element");
  }
  TransferMatrix2 total = elements.front();
  for (const auto& m : elements.subspan(1)) total = m * total;
  return total;
}

double transmission(const TransferMatrix2& m) {
  if (!m.finite()) throw NumericalError("transmission: non-finite transfer matrix");
  if (m.m11 == cplx{}) {
    throw SingularStructureError("transmission: M11 = 0 (perfect reflector)");
  }
  return std::norm(m.determinant() / m.m11);
}

double reflection(const TransferMatrix2& m) {
  if (!m.finite()) throw NumericalError("reflection: non-finite transfer matrix");
  if (m.m11 == cplx{}) {
    throw SingularStructureError("reflection: M11 = 0 (perfect reflector)");
  }
  return std::norm(m.m21 / m.m11);
}

double effective_index(double n1, double n2) { return 2.0 * n1 * n2 / (n1 + n2); }

double stopband_center(double n1, double n2, double period) {
  return std::numbers::pi / (effective_index(n1, n2) * period);
}

TransferMatrix2 mirror_matrix(const MirrorSpec& mirror, double k, double K) {
  struct Visitor {
    double k;
    double K;
    TransferMatrix2 operator()(const IdentityMirror&) const { return TransferMatrix2::identity(); }
    TransferMatrix2 operator()(const FlatMirror& f) const { return flat_mirror(f.r, f.position, K); }
    TransferMatrix2 operator()(const BraggMirror& b) const { return bragg_stack(b, k); }
  };
  return std::visit(Visitor{k, K}, mirror);
}

CavityAmplitudes solve_cavity(const TransferMatrix2& m1, const TransferMatrix2& m2,
                              AsymptoticKind kind) {
  CavityAmplitudes a{};
  const cplx det1 = m1.determinant();
  switch (kind) {
    case AsymptoticKind::in_left: {
      const cplx t1 = m1.m12 * m2.m21;
      const cplx t2 = m1.m22 * m2.m22;
      const cplx denom = t1 + t2;
      if (vanishes(denom, std::abs(t1) + std::abs(t2))) {
        throw ResonanceSingularity("in-left amplitude denominator vanishes");
      }
      a.e_plus = det1 * m2.m22 / denom;
      a.e_minus = -det1 * m2.m21 / denom;
      a.f_plus = 1.0;
      a.f_minus = -(m2.m21 * m1.m11 + m2.m22 * m1.m21) / denom;
      a.g_plus = m2.m11 * a.e_plus + m2.m12 * a.e_minus;
      a.g_minus = 0.0;
      break;
    }
    case AsymptoticKind::out_right:
    case AsymptoticKind::out_left: {
      const cplx t1 = m1.m11 * m2.m11;
      const cplx t2 = m1.m21 * m2.m12;
      const cplx denom = t1 + t2;
      if (vanishes(denom, std::abs(t1) + std::abs(t2))) {
        throw ResonanceSingularity("out amplitude denominator vanishes");
      }
      if (kind == AsymptoticKind::out_right) {
        a.e_plus = m1.m11 / denom;
        a.e_minus = m1.m21 / denom;
        a.f_plus = 1.0 / denom;
        a.f_minus = 0.0;
        a.g_plus = 1.0;
        a.g_minus = m2.m21 * a.e_plus + m2.m22 * a.e_minus;
      } else {
        a.e_plus = -det1 * m2.m12 / denom;
        a.e_minus = det1 * m2.m11 / denom;
        a.f_plus = -(m2.m11 * m1.m12 + m2.m12 * m1.m22) / denom;
        a.f_minus = 1.0;
        a.g_plus = 0.0;
        a.g_minus = m2.m21 * a.e_plus + m2.m22 * a.e_minus;
      }
      break;
    }
  }
  return a;
}

CavityAmplitudes solve_cavity_oracle(const TransferMatrix2& m1, const TransferMatrix2& m2,
                                     AsymptoticKind kind) {
  // Unknowns: f+, f-, e+, e-, g+, g-.
  enum { fp, fm, ep, em, gp, gm, n_unknowns };
  using Row = std::array<cplx, n_unknowns + 1>;
  std::array<Row, n_unknowns> sys{};

  sys[0][ep] = 1.0; sys[0][fp] = -m1.m11; sys[0][fm] = -m1.m12;
  sys[1][em] = 1.0; sys[1][fp] = -m1.m21; sys[1][fm] = -m1.m22;
  sys[2][gp] = 1.0; sys[2][ep] = -m2.m11; sys[2][em] = -m2.m12;
  sys[3][gm] = 1.0; sys[3][ep] = -m2.m21; sys[3][em] = -m2.m22;

  int unit = fp;
  int zero = gm;
  switch (kind) {
    case AsymptoticKind::in_left: unit = fp; zero = gm; break;
    case AsymptoticKind::out_right: unit = gp; zero = fm; break;
    case AsymptoticKind::out_left: unit = fm; zero = gp; break;
  }
  sys[4][unit] = 1.0;
  sys[4][n_unknowns] = 1.0;
  sys[5][zero] = 1.0;

  double scale = 0.0;
  for (const auto& row : sys) {
    for (int c = 0; c < n_unknowns; ++c) scale = std::max(scale, std::abs(row[c]));
  }

  for (int col = 0; col < n_unknowns; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n_unknowns; ++r) {
      if (std::abs(sys[r][col]) > std::abs(sys[pivot][col])) pivot = r;
    }
    if (std::abs(sys[pivot][col]) <= 1e-13 * scale) {
      throw ResonanceSingularity("boundary-value system is singular");
    }
    std::swap(sys[col], sys[pivot]);
    for (int r = col + 1; r < n_unknowns; ++r) {
      const cplx factor = sys[r][col] / sys[col][col];
      if (factor == cplx{}) continue;
      for (int c = col; c <= n_unknowns; ++c) sys[r][c] -= factor * sys[col][c];
    }
  }

  std::array<cplx, n_unknowns> x{};
  for (int r = n_unknowns - 1; r >= 0; --r) {
    cplx acc = sys[r][n_unknowns];
    for (int c = r + 1; c < n_unknowns; ++c) acc -= sys[r][c] * x[c];
    x[r] = acc / sys[r][r];
  }
  return {x[ep], x[em], x[fp], x[fm], x[gp], x[gm]};
}

void CavityStructure::validate() const {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw ConfigError(ConfigError::Category::invariant,
                      "structure.length_um must be positive, got " + std::to_string(length));
  }
  asymphot::validate(left);
  asymphot::validate(right);
}

CavityStructure flat_cavity(double r1, double r2, double length) {
  return {FlatMirror{r1, -0.5 * length}, FlatMirror{r2, 0.5 * length}, length};
}

CavityStructure bragg_cavity(double n1, double n2, double period, int layers, double length,
                             InterfaceForm form) {
  // Mirror image of the right stack: its last n2 layer ends at -length/2.
  BraggMirror left{n1, n2, period, layers, -0.5 * length - (layers + 0.5) * period, form};
  BraggMirror right{n1, n2, period, layers, 0.5 * length, form};
  return {left, right, length};
}

CavityStructure bare_cavity(double length) { return {IdentityMirror{}, IdentityMirror{}, length}; }

CavityAmplitudes solve_mode(const CavityStructure& structure, double k, double K,
                            AsymptoticKind kind) {
  const TransferMatrix2 m1 = mirror_matrix(structure.left, k, K);
  const TransferMatrix2 m2 = mirror_matrix(structure.right, k, K);
  if (!m1.finite() || !m2.finite()) {
    throw NumericalError("non-finite mirror transfer matrix at k = " + std::to_string(k) +
                         " rad/um");
  }
  try {
    return solve_cavity(m1, m2, kind);
  } catch (const ResonanceSingularity&) {
    throw ResonanceSingularity("cavity mode is singular", k);
  }
}

}  // namespace asymphot
