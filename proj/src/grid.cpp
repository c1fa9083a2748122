#include "lpw/grid.hpp"
#include "lpw/rng.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lpw {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::invalid_argument(where + ": " + what);
}

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

std::string num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// One complex FFT of length n. Eigen's inverse includes the 1/n factor.
void fft_line(std::vector<Complex>& buf, bool inverse) {
  thread_local Eigen::FFT<double> engine;
  thread_local std::vector<Complex> out;
  out.resize(buf.size());
  if (inverse)
    engine.inv(out, buf);
  else
    engine.fwd(out, buf);
  buf.swap(out);
}

// Apply the centered-origin transform along one axis of the flat layout.
// forward:  G_b = (-1)^b / sqrt(N) * sum_j g_j e^{-2 pi i j b / N}
// inverse:  g_j = sqrt(N) * (1/N) * sum_b (-1)^b G_b e^{+2 pi i j b / N}
// The (-1)^b phase accounts for the spatial origin sitting at -L, so bin b
// holds the coefficient of e^{i xi_b x} with xi_b = pi*signed(b)/L.
void transform_axis(CArray& vals, const GridSpec& g, int axis, bool inverse) {
  const int N = g.n_per_axis;
  const double scale = inverse ? std::sqrt(double(N)) : 1.0 / std::sqrt(double(N));
  const long lines = g.total_points() / N;
  const long stride = (g.dim == 2 && axis == 0) ? N : 1;
  std::vector<Complex> buf(N);
  for (int c = 0; c < vals.cols(); ++c) {
    for (long line = 0; line < lines; ++line) {
      // base offset of this line in the flat layout
      long base = (stride == 1) ? line * N : line;
      for (int j = 0; j < N; ++j) buf[j] = vals(base + j * stride, c);
      if (inverse)
        for (int j = 0; j < N; ++j)
          if (j & 1) buf[j] = -buf[j];
      fft_line(buf, inverse);
      if (!inverse)
        for (int j = 0; j < N; ++j)
          if (j & 1) buf[j] = -buf[j];
      for (int j = 0; j < N; ++j) vals(base + j * stride, c) = buf[j] * scale;
    }
  }
}

void check_same_grid(const GridSpec& a, const GridSpec& b, const char* where) {
  if (!(a == b)) fail(where, "operands live on different grids");
}

void check_finite(const CArray& v, const char* where) {
  if (!v.isFinite().all()) fail(where, "non-finite values");
}

} // namespace

GridSpec make_grid(int dim, double half_width, int n_per_axis) {
  if (dim != 1 && dim != 2)
    fail("make_grid", "dim must be 1 or 2 (got " + std::to_string(dim) + ")");
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    fail("make_grid", "half_width must be positive (got " + num(half_width) + ")");
  if (!power_of_two(n_per_axis) || n_per_axis < 8)
    fail("make_grid", "N must be a power of two >= 8 (got " +
                          std::to_string(n_per_axis) + ")");
  return GridSpec{dim, half_width, n_per_axis};
}

Eigen::ArrayXd SampledField::value_norms() const {
  const long m = values.rows();
  Eigen::ArrayXd out(m);
  if (values.cols() == 1) {
    out = values.col(0).abs();
  } else if (std::isinf(r_value)) {
    out = values.abs().rowwise().maxCoeff();
  } else if (r_value == 2.0) {
    out = values.abs2().rowwise().sum().sqrt();
  } else {
    out = values.abs().pow(r_value).rowwise().sum().pow(1.0 / r_value);
  }
  return out;
}

SampledField zero_field(const GridSpec& grid, int components, double r_value) {
  if (components < 1) fail("zero_field", "components must be >= 1");
  return {grid, r_value, CArray::Zero(grid.total_points(), components)};
}

SpectralField dft(const SampledField& f) {
  check_finite(f.values, "dft");
  SpectralField F{f.grid, f.r_value, f.values};
  for (int axis = 0; axis < f.grid.dim; ++axis)
    transform_axis(F.values, f.grid, axis, /*inverse=*/false);
  return F;
}

SampledField idft(const SpectralField& F) {
  check_finite(F.values, "idft");
  SampledField f{F.grid, F.r_value, F.values};
  for (int axis = 0; axis < F.grid.dim; ++axis)
    transform_axis(f.values, F.grid, axis, /*inverse=*/true);
  return f;
}

Eigen::ArrayXcd evaluate_symbol(const GridSpec& grid,
                                const std::function<Complex(double, double)>& fn) {
  const long m = grid.total_points();
  Eigen::ArrayXcd sym(m);
  for (long r = 0; r < m; ++r) {
    auto xi = grid.freq(r);
    sym(r) = fn(xi[0], xi[1]);
  }
  if (!sym.isFinite().all())
    fail("evaluate_symbol", "symbol produced non-finite values on the lattice");
  return sym;
}

SampledField fourier_multiply(const SampledField& f, const Eigen::ArrayXcd& symbol) {
  if (symbol.rows() != f.grid.total_points())
    fail("fourier_multiply", "symbol array length does not match the grid");
  if (!symbol.isFinite().all()) fail("fourier_multiply", "non-finite symbol values");
  SpectralField F = dft(f);
  F.values.colwise() *= symbol;
  return idft(F);
}

SampledField fourier_multiply(const SampledField& f, const CArray& diagonal_symbol) {
  if (diagonal_symbol.rows() != f.grid.total_points() ||
      diagonal_symbol.cols() != f.values.cols())
    fail("fourier_multiply", "diagonal symbol shape does not match the field");
  if (!diagonal_symbol.isFinite().all())
    fail("fourier_multiply", "non-finite symbol values");
  SpectralField F = dft(f);
  F.values *= diagonal_symbol;
  return idft(F);
}

SampledField fourier_multiply(const SampledField& f,
                              const std::function<Complex(double, double)>& fn) {
  return fourier_multiply(f, evaluate_symbol(f.grid, fn));
}

SampledField pointwise_multiply(const SampledField& m, const SampledField& f) {
  check_same_grid(m.grid, f.grid, "pointwise_multiply");
  SampledField out{f.grid, f.r_value, CArray(f.values.rows(), f.values.cols())};
  if (m.components() == 1) {
    out.values = f.values.colwise() * m.values.col(0);
  } else if (m.components() == f.components()) {
    out.values = f.values * m.values;
  } else {
    fail("pointwise_multiply",
         "multiplier must be scalar or match the field's component count");
  }
  return out;
}

SampledField upsample(const SampledField& f, int factor) {
  if (!power_of_two(factor))
    fail("upsample", "factor must be a power of two (got " + std::to_string(factor) + ")");
  if (factor == 1) return f;
  const GridSpec& g = f.grid;
  GridSpec fine = make_grid(g.dim, g.half_width, g.n_per_axis * factor);
  SpectralField F = dft(f);
  // coefficient scale: unitary normalization ties bin values to sqrt(points)
  const double amp = std::pow(double(factor), 0.5 * g.dim);
  SpectralField G{fine, f.r_value, CArray::Zero(fine.total_points(), f.components())};
  const int M = fine.n_per_axis;
  for (long r = 0; r < g.total_points(); ++r) {
    auto ij = g.axes_of(r);
    int b0 = g.signed_bin(ij[0]);
    long fr;
    if (g.dim == 1) {
      fr = b0 >= 0 ? b0 : b0 + M;
    } else {
      int b1 = g.signed_bin(ij[1]);
      fr = fine.row_of(b0 >= 0 ? b0 : b0 + M, b1 >= 0 ? b1 : b1 + M);
    }
    G.values.row(fr) = F.values.row(r) * amp;
  }
  return idft(G);
}

SampledField extend_along_last_axis(const SampledField& profile, const GridSpec& grid) {
  if (profile.grid.dim != 1)
    fail("extend_along_last_axis", "profile must live on a 1-d grid");
  if (grid.dim != 2)
    fail("extend_along_last_axis", "target grid must be 2-d");
  if (profile.grid.n_per_axis != grid.n_per_axis ||
      profile.grid.half_width != grid.half_width)
    fail("extend_along_last_axis", "profile axis does not match the target grid axis");
  SampledField out{grid, profile.r_value,
                   CArray(grid.total_points(), profile.components())};
  const int N = grid.n_per_axis;
  for (int i0 = 0; i0 < N; ++i0)
    out.values.middleRows(long(i0) * N, N) = profile.values;
  return out;
}

double smooth_cutoff_value(double t) {
  const double a = std::abs(t);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  auto bridge = [](double v) { return v > 0.0 ? std::exp(-1.0 / v) : 0.0; };
  const double u = 2.0 - a; // in (0,1)
  return bridge(u) / (bridge(u) + bridge(1.0 - u));
}

namespace {

SampledField sample_random_bandlimited(const FamilyParams& p, const GridSpec& g,
                                       std::uint64_t seed) {
  if (p.k_hi <= 0 || p.k_hi < p.k_lo)
    fail("sample_family", "random_bandlimited needs 0 <= k_lo <= k_hi");
  if (p.k_hi > g.xi_max())
    fail("sample_family", "k_hi = " + num(p.k_hi) + " exceeds xi_max = " +
                              num(g.xi_max()));
  SpectralField F{g, p.r_value, CArray::Zero(g.total_points(), p.components)};
  long n_modes = 0;
  for (long r = 0; r < g.total_points(); ++r) {
    double a = g.freq_abs(r);
    if (a >= p.k_lo && a <= p.k_hi) ++n_modes;
  }
  if (n_modes == 0)
    fail("sample_family", "band [" + num(p.k_lo) + ", " + num(p.k_hi) +
                              "] contains no lattice modes");
  // physical amplitude per mode: the unitary transform divides by sqrt(M),
  // so plant sqrt(M) c_m to keep the sampled function independent of N
  const double amp = std::sqrt(double(g.total_points()) / double(n_modes));
  for (long r = 0; r < g.total_points(); ++r) {
    double a = g.freq_abs(r);
    if (a < p.k_lo || a > p.k_hi) continue;
    auto ij = g.axes_of(r);
    // key on physical (signed) mode indices: stable under N refinement
    std::uint64_t key = mix_keys(seed, std::uint64_t(std::int64_t(g.signed_bin(ij[0]))) * 0x100000001b3ull ^
                                           std::uint64_t(std::int64_t(g.dim == 2 ? g.signed_bin(ij[1]) : 0)));
    for (int c = 0; c < p.components; ++c) {
      std::uint64_t ck = mix_keys(key, 0xc0ffee + std::uint64_t(c));
      F.values(r, c) = amp * Complex(gaussian(mix_keys(ck, 1)), gaussian(mix_keys(ck, 2)));
    }
  }
  return idft(F);
}

} // namespace

SampledField sample_family(FieldKind kind, const FamilyParams& p,
                           const GridSpec& grid, std::uint64_t seed) {
  if (p.components < 1) fail("sample_family", "components must be >= 1");
  if (kind == FieldKind::random_bandlimited)
    return sample_random_bandlimited(p, grid, seed);

  SampledField f{grid, p.r_value, CArray(grid.total_points(), p.components)};
  Eigen::ArrayXcd col(grid.total_points());
  switch (kind) {
    case FieldKind::gaussian:
    case FieldKind::modulated_gaussian: {
      if (!(p.width > 0)) fail("sample_family", "gaussian width must be positive");
      const double w2 = 2.0 * p.width * p.width;
      const double period = 2.0 * grid.half_width;
      // periodize the envelope so it is smooth at the seam instead of
      // carrying a truncation kink; the image sum factors per axis, and
      // three images each side is exact in double for widths up to a
      // third of the period
      auto axis_env = [&](double d) {
        double s = 0.0;
        for (int m = -3; m <= 3; ++m) {
          const double dd = d + period * double(m);
          s += std::exp(-dd * dd / w2);
        }
        return s;
      };
      for (long r = 0; r < grid.total_points(); ++r) {
        auto x = grid.point(r);
        double env = axis_env(x[0] - p.center[0]);
        if (grid.dim == 2) env *= axis_env(x[1] - p.center[1]);
        if (kind == FieldKind::modulated_gaussian) {
          double t = grid.last_coord(r);
          col(r) = env * Complex(std::cos(p.freq * t), std::sin(p.freq * t));
        } else {
          col(r) = env;
        }
      }
      break;
    }
    case FieldKind::indicator_halfspace: {
      for (long r = 0; r < grid.total_points(); ++r)
        col(r) = grid.last_coord(r) >= 0.0 ? 1.0 : 0.0;
      break;
    }
    case FieldKind::smooth_cutoff: {
      for (long r = 0; r < grid.total_points(); ++r)
        col(r) = smooth_cutoff_value(grid.last_coord(r));
      break;
    }
    case FieldKind::concentrated_near_hyperplane: {
      if (!(p.scale > 0)) fail("sample_family", "scale must be positive");
      const double s2 = 2.0 * p.scale * p.scale;
      for (long r = 0; r < grid.total_points(); ++r) {
        double t = grid.last_coord(r);
        double env = std::exp(-t * t / s2);
        col(r) = p.freq == 0.0
                     ? Complex(env, 0.0)
                     : env * Complex(std::cos(p.freq * t), std::sin(p.freq * t));
      }
      break;
    }
    default:
      fail("sample_family", "unhandled field kind");
  }
  for (int c = 0; c < p.components; ++c) f.values.col(c) = col;
  return f;
}

} // namespace lpw
