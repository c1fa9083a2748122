#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

// Periodic sampling grids on [-L, L)^d (d = 1 or 2) with a unitary discrete
// Fourier transform mapped to the physical frequency lattice xi = pi*m/L.
// The last coordinate axis is distinguished throughout the library: weights,
// halfspace indicators and hyperplane-concentrated fields all act on it.

namespace lpw {

using Complex = std::complex<double>;
// rows = flattened grid points, cols = vector components
using CArray = Eigen::ArrayXXcd;

struct GridSpec {
  int dim = 1;             // 1 or 2
  double half_width = 1.0; // L; domain is [-L, L) per axis
  int n_per_axis = 8;      // N, a power of two

  double spacing() const { return 2.0 * half_width / n_per_axis; }
  long total_points() const {
    return dim == 1 ? n_per_axis : long(n_per_axis) * n_per_axis;
  }
  // sample coordinate along one axis
  double coord(int j) const { return -half_width + j * spacing(); }
  // frequency of FFT bin b (bin order: 0..N-1 wraps at N/2)
  int signed_bin(int b) const { return b < n_per_axis / 2 ? b : b - n_per_axis; }
  double freq_of_bin(int b) const {
    return M_PI * signed_bin(b) / half_width;
  }
  double xi_max() const { return M_PI * n_per_axis / (2.0 * half_width); }

  // flat row index <-> per-axis indices; the last axis is contiguous
  long row_of(int i0, int i1) const { return long(i0) * n_per_axis + i1; }
  std::array<int, 2> axes_of(long row) const {
    if (dim == 1) return {int(row), 0};
    return {int(row / n_per_axis), int(row % n_per_axis)};
  }
  // physical coordinates of a flat row; x[1] unused when dim == 1.
  // By convention x[dim-1] is the distinguished last coordinate t.
  std::array<double, 2> point(long row) const {
    auto ij = axes_of(row);
    if (dim == 1) return {coord(ij[0]), 0.0};
    return {coord(ij[0]), coord(ij[1])};
  }
  double last_coord(long row) const {
    return dim == 1 ? coord(int(row)) : coord(int(row % n_per_axis));
  }
  // frequency vector of a flat spectral row; xi[1] unused when dim == 1
  std::array<double, 2> freq(long row) const {
    auto ij = axes_of(row);
    if (dim == 1) return {freq_of_bin(ij[0]), 0.0};
    return {freq_of_bin(ij[0]), freq_of_bin(ij[1])};
  }
  double freq_abs(long row) const {
    auto f = freq(row);
    return dim == 1 ? std::abs(f[0]) : std::hypot(f[0], f[1]);
  }

  bool operator==(const GridSpec& o) const {
    return dim == o.dim && half_width == o.half_width && n_per_axis == o.n_per_axis;
  }
};

// Throws std::invalid_argument naming the violated constraint.
GridSpec make_grid(int dim, double half_width, int n_per_axis);

// A vector-valued function sampled on the grid. r_value is the exponent of
// the pointwise value norm |f(x)|_{l^r} used by every scalar reduction
// (r_value may be infinity).
struct SampledField {
  GridSpec grid;
  double r_value = 2.0;
  CArray values; // total_points() x n

  int components() const { return int(values.cols()); }
  // pointwise l^{r_value} norms
  Eigen::ArrayXd value_norms() const;
};

// Frequency-side representation, same layout, FFT bin order per axis.
struct SpectralField {
  GridSpec grid;
  double r_value = 2.0;
  CArray values;

  int components() const { return int(values.cols()); }
};

SampledField zero_field(const GridSpec& grid, int components = 1, double r_value = 2.0);

// Unitary transform pair: dft is an isometry from grid samples to spectral
// coefficients (Parseval holds exactly), with the phase convention that a
// pure lattice mode e^{i xi_m x} has its coefficient in bin m with value
// sqrt(total_points). idft(dft(f)) == f to roundoff.
SpectralField dft(const SampledField& f);
SampledField idft(const SpectralField& F);

// Evaluate a symbol on the frequency lattice. The callable receives
// (xi_first, xi_last); for dim == 1 xi_first is the only frequency and
// xi_last is 0.
Eigen::ArrayXcd evaluate_symbol(const GridSpec& grid,
                                const std::function<Complex(double, double)>& fn);

// Fourier multiplier ops: scalar symbol applied to every component, or a
// diagonal symbol with one column per component. Non-finite symbol values
// are rejected.
SampledField fourier_multiply(const SampledField& f, const Eigen::ArrayXcd& symbol);
SampledField fourier_multiply(const SampledField& f, const CArray& diagonal_symbol);
SampledField fourier_multiply(const SampledField& f,
                              const std::function<Complex(double, double)>& fn);

// Pointwise product m(x) f(x): m must be scalar (applied to all components
// of f) or have exactly f.components() columns (diagonal action).
SampledField pointwise_multiply(const SampledField& m, const SampledField& f);

// Spectral zero-padding onto an `factor`-times finer grid over the same
// domain (factor a power of two). Band-limited fields are reproduced
// exactly at the original sample points.
SampledField upsample(const SampledField& f, int factor);

// Extend a 1-d profile g(t) to a d=2 grid as m(x', t) = g(t).
SampledField extend_along_last_axis(const SampledField& profile, const GridSpec& grid);

enum class FieldKind {
  gaussian,
  modulated_gaussian,
  random_bandlimited,
  indicator_halfspace,
  smooth_cutoff,
  concentrated_near_hyperplane,
};

struct FamilyParams {
  std::array<double, 2> center = {0.0, 0.0}; // gaussian center
  double width = 1.0;                        // gaussian width
  double freq = 0.0;       // modulation frequency along the last axis
  double k_lo = 0.0;       // random_bandlimited: physical band bounds
  double k_hi = 0.0;
  double scale = 1.0;      // concentrated_near_hyperplane: bump width in t
  int components = 1;
  double r_value = 2.0;
};

// Deterministic test-function families. Identical (kind, params, grid, seed)
// give bit-identical fields; random_bandlimited coefficients are keyed on the
// physical mode indices, so refining N at fixed L reproduces the same
// continuum function.
SampledField sample_family(FieldKind kind, const FamilyParams& params,
                           const GridSpec& grid, std::uint64_t seed = 0);

// C^inf cutoff profile: 1 on |t| <= 1, 0 on |t| >= 2, exp-bridge between.
double smooth_cutoff_value(double t);

} // namespace lpw
