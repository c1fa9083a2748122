#include "lpw/dyadic.hpp"

#include <cmath>
#include <stdexcept>

namespace lpw {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::invalid_argument(where + ": " + what);
}

} // namespace

double dyadic_generator(double u) {
  u = std::abs(u);
  if (u <= 1.0) return 1.0;
  if (u >= 1.5) return 0.0;
  auto bridge = [](double v) { return v > 0.0 ? std::exp(-1.0 / v) : 0.0; };
  const double a = (1.5 - u) / 0.5; // in (0,1), increasing toward u = 1
  return bridge(a) / (bridge(a) + bridge(1.0 - a));
}

int max_levels(const GridSpec& grid) {
  // largest K with 1.5 * 2^K <= xi_max
  int k = 0;
  while (1.5 * std::ldexp(1.0, k + 1) <= grid.xi_max()) ++k;
  if (1.5 * std::ldexp(1.0, k) > grid.xi_max())
    fail("max_levels", "grid too coarse for even one dyadic band");
  return k;
}

DyadicFamily build_family(const GridSpec& grid, int levels) {
  const int kmax = max_levels(grid);
  if (levels < 0) fail("build_family", "levels must be >= 0");
  if (levels > kmax)
    fail("build_family", "levels = " + std::to_string(levels) +
                             " exceeds the lattice capacity K = " +
                             std::to_string(kmax) + " (need (3/2) 2^K <= xi_max)");
  DyadicFamily fam{grid, levels, {}};
  const long m = grid.total_points();
  Eigen::ArrayXd absxi(m);
  for (long r = 0; r < m; ++r) absxi(r) = grid.freq_abs(r);

  Eigen::ArrayXd prev(m), cur(m);
  for (long r = 0; r < m; ++r) prev(r) = dyadic_generator(absxi(r));
  fam.band.push_back(prev);
  for (int k = 1; k <= levels; ++k) {
    for (long r = 0; r < m; ++r) cur(r) = dyadic_generator(std::ldexp(absxi(r), -k));
    fam.band.push_back(cur - prev);
    prev = cur;
  }

  // construction-time invariants at 1e-12
  Eigen::ArrayXd sum = Eigen::ArrayXd::Zero(m);
  for (int k = 0; k <= levels; ++k) {
    const auto& b = fam.band[k];
    if ((b < -1e-12).any() || (b > 1.0 + 1e-12).any())
      fail("build_family", "band values escaped [0, 1]");
    const double lo = k == 0 ? 0.0 : std::ldexp(1.0, k - 1);
    const double hi = 1.5 * std::ldexp(1.0, k);
    for (long r = 0; r < m; ++r) {
      const bool outside = absxi(r) < lo - 1e-12 || absxi(r) > hi + 1e-12;
      if (outside && std::abs(b(r)) > 1e-12)
        fail("build_family", "band " + std::to_string(k) + " leaks outside its annulus");
    }
    sum += b;
  }
  const double cap = std::ldexp(1.0, levels);
  for (long r = 0; r < m; ++r) {
    if (absxi(r) <= cap && std::abs(sum(r) - 1.0) > 1e-12)
      fail("build_family", "bands do not telescope to 1 on |xi| <= 2^K");
  }
  return fam;
}

SampledField block(const DyadicFamily& fam, int k, const SampledField& f) {
  if (!(fam.grid == f.grid)) fail("block", "field grid does not match the family");
  if (k < 0 || k > fam.levels)
    fail("block", "band index " + std::to_string(k) + " outside 0.." +
                      std::to_string(fam.levels));
  const Eigen::ArrayXcd sym = fam.band[k].cast<Complex>();
  return fourier_multiply(f, sym);
}

SampledField partial(const DyadicFamily& fam, int l, const SampledField& f) {
  if (!(fam.grid == f.grid)) fail("partial", "field grid does not match the family");
  if (l < 0) return zero_field(f.grid, f.components(), f.r_value);
  if (l > fam.levels)
    fail("partial", "level " + std::to_string(l) + " outside 0.." +
                        std::to_string(fam.levels));
  Eigen::ArrayXcd sym(f.grid.total_points());
  for (long r = 0; r < f.grid.total_points(); ++r)
    sym(r) = dyadic_generator(std::ldexp(f.grid.freq_abs(r), -l));
  return fourier_multiply(f, sym);
}

std::vector<SampledField> all_blocks(const DyadicFamily& fam, const SampledField& f) {
  if (!(fam.grid == f.grid)) fail("all_blocks", "field grid does not match the family");
  SpectralField F = dft(f);
  std::vector<SampledField> out;
  out.reserve(fam.levels + 1);
  for (int k = 0; k <= fam.levels; ++k) {
    SpectralField Fk{F.grid, F.r_value, F.values.colwise() * fam.band[k].cast<Complex>()};
    out.push_back(idft(Fk));
  }
  return out;
}

double out_of_band_mass(const SampledField& f,
                        const std::function<bool(double)>& inside) {
  SpectralField F = dft(f);
  double total = 0.0, outside = 0.0;
  for (long r = 0; r < f.grid.total_points(); ++r) {
    double m = F.values.row(r).abs2().sum();
    total += m;
    if (!inside(f.grid.freq_abs(r))) outside += m;
  }
  if (total == 0.0) return 0.0;
  return outside / total;
}

} // namespace lpw
