#include "lpw/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lpw {
namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::invalid_argument(where + ": " + what);
}

// ball averages via periodic FFT convolution with the normalized lattice
// ball indicator; exact up to FFT roundoff and radius-independent in cost.
// Takes the already transformed value-norm field so the per-radius cost is
// one kernel transform plus one inverse. The centered-phase transform pair
// turns a product of two transforms into a half-period-shifted convolution,
// so the kernel is built centered on the middle sample (x = 0), which
// cancels the shift exactly.
Eigen::ArrayXd ball_average(const SpectralField& Fv, double rho) {
  const GridSpec& g = Fv.grid;
  const int N = g.n_per_axis;
  const double h = g.spacing();

  CArray kernel(g.total_points(), 1);
  long count = 0;
  for (long rw = 0; rw < g.total_points(); ++rw) {
    auto ij = g.axes_of(rw);
    double d = g.dim == 1 ? h * std::abs(ij[0] - N / 2)
                          : h * std::hypot(ij[0] - N / 2, ij[1] - N / 2);
    bool in = d <= rho * (1.0 + 1e-12);
    kernel(rw, 0) = in ? 1.0 : 0.0;
    count += in;
  }
  kernel /= double(count);

  SpectralField Fk = dft({g, 2.0, std::move(kernel)});
  double amp = std::sqrt(double(g.total_points()));
  SpectralField prod{g, 2.0, CArray(amp * Fv.values.col(0) * Fk.values.col(0))};
  return idft(prod).values.col(0).real().max(0.0);
}

void check_radii(const MaximalConfig& cfg, const GridSpec& g) {
  const double h = g.spacing();
  const double top = 2.0 * g.half_width;
  if (cfg.radii.empty()) fail("hl_maximal", "radius set is empty");
  for (double r : cfg.radii)
    if (!(r > h) || !(r <= top * (1.0 + 1e-12)))
      fail("hl_maximal", "radius " + std::to_string(r) +
                             " outside (grid spacing, 2L]");
}

Eigen::ArrayXd stack_lq(const std::vector<Eigen::ArrayXd>& arrays, double q) {
  Eigen::ArrayXd acc = Eigen::ArrayXd::Zero(arrays.front().size());
  if (std::isinf(q)) {
    for (const auto& a : arrays) acc = acc.max(a);
    return acc;
  }
  for (const auto& a : arrays) acc += a.pow(q);
  return acc.pow(1.0 / q);
}

void check_family(const std::vector<SampledField>& fields, const std::string& where) {
  if (fields.empty()) fail(where, "field list is empty");
  for (const auto& f : fields)
    if (!(f.grid == fields.front().grid))
      fail(where, "fields live on different grids");
}

} // namespace

MaximalConfig dyadic_radii(const GridSpec& grid) {
  MaximalConfig cfg;
  const int J = int(std::lround(std::log2(double(grid.n_per_axis))));
  for (int j = 0; j < J; ++j)
    cfg.radii.push_back(2.0 * grid.half_width * std::ldexp(1.0, -j));
  return cfg;
}

SampledField hl_maximal(const SampledField& f, const MaximalConfig& cfg) {
  check_radii(cfg, f.grid);
  Eigen::ArrayXd vn = f.value_norms();
  SpectralField Fv = dft({f.grid, 2.0, CArray(vn.cast<Complex>())});
  Eigen::ArrayXd best = vn; // degenerate single-cell ball keeps M f >= |f|
  for (double rho : cfg.radii) best = best.max(ball_average(Fv, rho));
  return {f.grid, 2.0, CArray(best.cast<Complex>())};
}

SampledField hl_maximal_all_radii(const SampledField& f) {
  const GridSpec& g = f.grid;
  const int N = g.n_per_axis;
  const double h = g.spacing();
  auto rep = [N](int i) { return i < N / 2 ? i : i - N; };

  // every torus offset, sorted by length; equal-length groups share a radius
  struct Off {
    int d0, d1;
    double norm;
  };
  std::vector<Off> off;
  off.reserve(g.total_points());
  for (long rw = 0; rw < g.total_points(); ++rw) {
    auto ij = g.axes_of(rw);
    double d = g.dim == 1 ? h * std::abs(rep(ij[0]))
                          : h * std::hypot(rep(ij[0]), rep(ij[1]));
    off.push_back({rep(ij[0]), g.dim == 1 ? 0 : rep(ij[1]), d});
  }
  std::sort(off.begin(), off.end(),
            [](const Off& a, const Off& b) { return a.norm < b.norm; });

  Eigen::ArrayXd vn = f.value_norms();
  Eigen::ArrayXd best = Eigen::ArrayXd::Zero(g.total_points());
  auto wrap = [N](int i) { return ((i % N) + N) % N; };
  // per-center walk over the sorted offsets; a running sum gives every
  // distinct-radius ball average in one pass
  for (long rw = 0; rw < g.total_points(); ++rw) {
    auto ij = g.axes_of(rw);
    double run = 0.0;
    long cnt = 0;
    double mx = 0.0;
    for (std::size_t i = 0; i < off.size(); ++i) {
      long src = g.dim == 1 ? wrap(ij[0] + off[i].d0)
                            : g.row_of(wrap(ij[0] + off[i].d0), wrap(ij[1] + off[i].d1));
      run += vn(src);
      ++cnt;
      bool group_end = i + 1 == off.size() || off[i + 1].norm > off[i].norm + 1e-12;
      if (group_end) mx = std::max(mx, run / double(cnt));
    }
    best(rw) = mx;
  }
  return {g, 2.0, best.cast<Complex>().matrix().array()};
}

double fefferman_stein_check(const std::vector<SampledField>& fields, double p,
                             double q, double gamma) {
  check_family(fields, "fefferman_stein_check");
  PowerWeight w = cell_averaged_weight(fields.front().grid, gamma);
  MaximalConfig cfg = dyadic_radii(fields.front().grid);

  std::vector<Eigen::ArrayXd> lhs, rhs;
  for (const auto& f : fields) {
    lhs.push_back(hl_maximal(f, cfg).value_norms());
    rhs.push_back(f.value_norms());
  }
  double den = weighted_lp_reduce(stack_lq(rhs, q), p, w);
  if (!(den > 0.0)) fail("fefferman_stein_check", "zero denominator");
  return weighted_lp_reduce(stack_lq(lhs, q), p, w) / den;
}

double mixed_maximal_check(const std::vector<SampledField>& fields, double p,
                           double r, double q, double gamma) {
  check_family(fields, "mixed_maximal_check");
  PowerWeight w = cell_averaged_weight(fields.front().grid, gamma);
  MaximalConfig cfg = dyadic_radii(fields.front().grid);

  std::vector<Eigen::ArrayXd> lhs, rhs;
  for (const auto& f : fields) {
    lhs.push_back(hl_maximal(f, cfg).value_norms());
    rhs.push_back(f.value_norms());
  }
  double den = mixed_reduce(stack_lq(rhs, q), p, r, w);
  if (!(den > 0.0)) fail("mixed_maximal_check", "zero denominator");
  return mixed_reduce(stack_lq(lhs, q), p, r, w) / den;
}

} // namespace lpw
