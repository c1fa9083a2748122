#include "lpw/norms.hpp"

#include "lpw/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace lpw {
namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::invalid_argument(where + ": " + what);
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void check_outer_p(double p, const std::string& where) {
  if (std::isinf(p)) return; // exact lattice supremum
  if (!(p > 1.0)) fail(where, "p must lie in (1, inf], got " + num(p));
}

void check_q(double q, const std::string& where) {
  if (std::isinf(q)) return;
  if (!(q >= 1.0)) fail(where, "q must lie in [1, inf], got " + num(q));
}

void check_weight(const SampledField& f, const PowerWeight& w,
                  const std::string& where) {
  if (!(f.grid == w.grid)) fail(where, "field and weight grids differ");
}

// integer power of a complex number; std::pow(0+0i, 0) is not reliable
Complex ipow(Complex z, int a) {
  Complex r = 1.0;
  for (int i = 0; i < a; ++i) r *= z;
  return r;
}

std::vector<double> binomial_row(int m) {
  std::vector<double> c(m + 1, 1.0);
  for (int i = 1; i <= m; ++i)
    for (int j = i - 1; j >= 1; --j) c[j] += c[j - 1];
  return c;
}

// periodic row shift by (s0, s1) grid steps: out(x) = in(x + s h)
CArray shifted_rows(const CArray& v, const GridSpec& g, int s0, int s1) {
  const int N = g.n_per_axis;
  auto wrap = [N](int i) { return ((i % N) + N) % N; };
  CArray out(v.rows(), v.cols());
  if (g.dim == 1) {
    for (int i = 0; i < N; ++i) out.row(i) = v.row(wrap(i + s0));
  } else {
    for (int i0 = 0; i0 < N; ++i0)
      for (int i1 = 0; i1 < N; ++i1)
        out.row(g.row_of(i0, i1)) = v.row(g.row_of(wrap(i0 + s0), wrap(i1 + s1)));
  }
  return out;
}

struct Offset {
  int d0, d1;
  double norm; // physical length of the shortest torus representative
};

// all distinct periodic lattice offsets, sorted by physical length
std::vector<Offset> all_offsets(const GridSpec& g) {
  const int N = g.n_per_axis;
  const double h = g.spacing();
  auto rep = [N](int d) { return d < N / 2 ? d : d - N; };
  std::vector<Offset> off;
  if (g.dim == 1) {
    off.reserve(N);
    for (int d = 0; d < N; ++d)
      off.push_back({d, 0, h * std::abs(rep(d))});
  } else {
    off.reserve(long(N) * N);
    for (int d0 = 0; d0 < N; ++d0)
      for (int d1 = 0; d1 < N; ++d1)
        off.push_back({d0, d1, h * std::hypot(rep(d0), rep(d1))});
  }
  std::sort(off.begin(), off.end(),
            [](const Offset& a, const Offset& b) { return a.norm < b.norm; });
  return off;
}

} // namespace

std::string SpaceSpec::label() const {
  char buf[96];
  switch (kind) {
    case SpaceKind::Lp:
      std::snprintf(buf, sizeof buf, "Lp(p=%g,gamma=%g)", p, gamma);
      break;
    case SpaceKind::Besov:
      std::snprintf(buf, sizeof buf, "B(s=%g,p=%g,q=%g,gamma=%g)", s, p, q, gamma);
      break;
    case SpaceKind::TriebelLizorkin:
      std::snprintf(buf, sizeof buf, "F(s=%g,p=%g,q=%g,gamma=%g)", s, p, q, gamma);
      break;
    case SpaceKind::Bessel:
      std::snprintf(buf, sizeof buf, "H(s=%g,p=%g,gamma=%g)", s, p, gamma);
      break;
    case SpaceKind::Sobolev:
      std::snprintf(buf, sizeof buf, "W(m=%d,p=%g,gamma=%g)", m, p, gamma);
      break;
    case SpaceKind::MixedLp:
      std::snprintf(buf, sizeof buf, "LpLr(p=%g,r=%g,gamma=%g)", p, r, gamma);
      break;
  }
  return buf;
}

double lq_combine(const std::vector<double>& entries, double q) {
  check_q(q, "lq_combine");
  if (entries.empty()) return 0.0;
  if (std::isinf(q)) return *std::max_element(entries.begin(), entries.end());
  double acc = 0.0;
  for (double e : entries) acc += std::pow(e, q);
  return std::pow(acc, 1.0 / q);
}

double besov_norm(const SampledField& f, const DyadicFamily& fam, double s,
                  double p, double q, const PowerWeight& w) {
  check_outer_p(p, "besov_norm");
  check_q(q, "besov_norm");
  check_weight(f, w, "besov_norm");
  auto blocks = all_blocks(fam, f);
  std::vector<double> a(blocks.size());
  for (std::size_t k = 0; k < blocks.size(); ++k)
    a[k] = std::pow(2.0, s * double(k)) * weighted_lp_norm(blocks[k], p, w);
  return lq_combine(a, q);
}

double tl_norm(const SampledField& f, const DyadicFamily& fam, double s,
               double p, double q, const PowerWeight& w) {
  check_outer_p(p, "tl_norm");
  check_q(q, "tl_norm");
  check_weight(f, w, "tl_norm");
  auto blocks = all_blocks(fam, f);
  Eigen::ArrayXd acc = Eigen::ArrayXd::Zero(f.grid.total_points());
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    Eigen::ArrayXd vn = std::pow(2.0, s * double(k)) * blocks[k].value_norms();
    if (std::isinf(q))
      acc = acc.max(vn);
    else
      acc += vn.pow(q);
  }
  if (!std::isinf(q)) acc = acc.pow(1.0 / q);
  return weighted_lp_reduce(acc, p, w);
}

double bessel_norm(const SampledField& f, double s, double p,
                   const PowerWeight& w) {
  check_outer_p(p, "bessel_norm");
  check_weight(f, w, "bessel_norm");
  SampledField g = fourier_multiply(f, [s](double x0, double x1) {
    double a = x0 * x0 + x1 * x1;
    return Complex(std::pow(1.0 + a, 0.5 * s), 0.0);
  });
  return weighted_lp_norm(g, p, w);
}

double sobolev_norm(const SampledField& f, int m, double p, const PowerWeight& w) {
  check_outer_p(p, "sobolev_norm");
  check_weight(f, w, "sobolev_norm");
  if (m < 0) fail("sobolev_norm", "order m must be >= 0");
  double acc = 0.0;
  auto add = [&](int a0, int a1) {
    SampledField g = fourier_multiply(f, [a0, a1](double x0, double x1) {
      return ipow(Complex(0.0, x0), a0) * ipow(Complex(0.0, x1), a1);
    });
    acc += std::pow(weighted_lp_norm(g, p, w), p);
  };
  if (f.grid.dim == 1) {
    for (int a = 0; a <= m; ++a) add(a, 0);
  } else {
    for (int a0 = 0; a0 <= m; ++a0)
      for (int a1 = 0; a0 + a1 <= m; ++a1) add(a0, a1);
  }
  return std::pow(acc, 1.0 / p);
}

SampledField finite_difference(const SampledField& f, int m, int off0, int off1) {
  if (m < 1) fail("finite_difference", "difference order must be >= 1");
  auto c = binomial_row(m);
  CArray acc = CArray::Zero(f.values.rows(), f.values.cols());
  for (int l = 0; l <= m; ++l) {
    double sgn = (l % 2 == 0) ? 1.0 : -1.0;
    int steps = m - l;
    acc += (sgn * c[l]) * shifted_rows(f.values, f.grid, steps * off0, steps * off1);
  }
  return {f.grid, f.r_value, std::move(acc)};
}

double modulus_of_smoothness(const SampledField& f, int m, double p,
                             const PowerWeight& w, double t) {
  check_outer_p(p, "modulus_of_smoothness");
  check_weight(f, w, "modulus_of_smoothness");
  if (!(t >= 0.0)) fail("modulus_of_smoothness", "scale t must be >= 0");
  double best = 0.0;
  for (const Offset& o : all_offsets(f.grid)) {
    if (o.norm > t * (1.0 + 1e-12)) break; // sorted ascending
    if (o.d0 == 0 && o.d1 == 0) continue;
    best = std::max(best,
                    weighted_lp_norm(finite_difference(f, m, o.d0, o.d1), p, w));
  }
  return best;
}

double difference_besov_norm(const SampledField& f, double s, double p,
                             double q, const PowerWeight& w, int m) {
  check_outer_p(p, "difference_besov_norm");
  check_q(q, "difference_besov_norm");
  check_weight(f, w, "difference_besov_norm");
  if (!(s > 0.0) || !(s < double(m)))
    fail("difference_besov_norm",
         "need 0 < s < m, got s = " + num(s) + ", m = " + num(double(m)));

  const GridSpec& g = f.grid;
  const int J = int(std::lround(std::log2(double(g.n_per_axis))));
  const double h = g.spacing();
  const double cellvol = std::pow(h, g.dim);

  // scales descend t_0 = 2L > t_1 > ... ; offsets ascend, so walk both
  std::vector<double> tj(J);
  for (int j = 0; j < J; ++j) tj[j] = 2.0 * g.half_width * std::ldexp(1.0, -j);

  auto off = all_offsets(g);
  Eigen::ArrayXd running = Eigen::ArrayXd::Zero(g.total_points());
  std::vector<double> level_norm(J, 0.0);
  std::size_t next = 0;
  for (int j = J - 1; j >= 0; --j) {
    const double t = tj[j];
    while (next < off.size() && off[next].norm <= t * (1.0 + 1e-12)) {
      const Offset& o = off[next++];
      if (!(o.d0 == 0 && o.d1 == 0))
        running += finite_difference(f, m, o.d0, o.d1).value_norms();
    }
    Eigen::ArrayXd avg = running * (cellvol / std::pow(t, g.dim));
    level_norm[j] = weighted_lp_reduce(avg, p, w);
  }

  std::vector<double> entries(J);
  for (int j = 0; j < J; ++j)
    entries[j] = std::pow(tj[j], -s) * level_norm[j];
  double semi;
  if (std::isinf(q)) {
    semi = *std::max_element(entries.begin(), entries.end());
  } else {
    double acc = 0.0;
    for (double e : entries) acc += std::pow(e, q) * std::log(2.0);
    semi = std::pow(acc, 1.0 / q);
  }
  return weighted_lp_norm(f, p, w) + semi;
}

double randomized_norm(const SampledField& f, const DyadicFamily& fam, double s,
                       double p, const PowerWeight& w, const RandomizedMode& mode) {
  check_outer_p(p, "randomized_norm");
  check_weight(f, w, "randomized_norm");
  auto blocks = all_blocks(fam, f);

  if (mode.exact_p2) {
    if (p != 2.0)
      fail("randomized_norm", "exact_p2 is the p = 2 identity, got p = " + num(p));
    Eigen::ArrayXd acc = Eigen::ArrayXd::Zero(f.grid.total_points());
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      Eigen::ArrayXd vn = std::pow(2.0, s * double(k)) * blocks[k].value_norms();
      acc += vn.square();
    }
    return weighted_lp_reduce(acc.sqrt(), 2.0, w);
  }

  if (mode.samples < 1) fail("randomized_norm", "need at least one sample");
  double mean_pow = 0.0;
  for (int i = 0; i < mode.samples; ++i) {
    const std::uint64_t sample_key = mix_keys(mode.seed, 0x5eedULL + i);
    CArray acc = CArray::Zero(f.values.rows(), f.values.cols());
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      double eps = rademacher(mix_keys(sample_key, k));
      acc += (eps * std::pow(2.0, s * double(k))) * blocks[k].values;
    }
    SampledField sum{f.grid, f.r_value, std::move(acc)};
    mean_pow += std::pow(weighted_lp_norm(sum, p, w), p);
  }
  return std::pow(mean_pow / mode.samples, 1.0 / p);
}

double derivative_norm(const SampledField& f, double s, double p,
                       const PowerWeight& w, int m) {
  check_outer_p(p, "derivative_norm");
  check_weight(f, w, "derivative_norm");
  if (m < 0) fail("derivative_norm", "order m must be >= 0");
  double acc = 0.0;
  auto add = [&](int a0, int a1) {
    SampledField g = fourier_multiply(f, [a0, a1](double x0, double x1) {
      return ipow(Complex(0.0, x0), a0) * ipow(Complex(0.0, x1), a1);
    });
    acc += bessel_norm(g, s - m, p, w);
  };
  if (f.grid.dim == 1) {
    for (int a = 0; a <= m; ++a) add(a, 0);
  } else {
    for (int a0 = 0; a0 <= m; ++a0)
      for (int a1 = 0; a0 + a1 <= m; ++a1) add(a0, a1);
  }
  return acc;
}

double holder_norm(const SampledField& f, double sigma) {
  if (!(sigma >= 0.0)) fail("holder_norm", "sigma must be >= 0");
  const int k = int(std::floor(sigma));
  const double frac = sigma - k;
  const GridSpec& g = f.grid;
  const int N = g.n_per_axis;
  const double h = g.spacing();

  std::vector<std::array<int, 2>> low, top;
  if (g.dim == 1) {
    for (int a = 0; a <= k; ++a) (a == k ? top : low).push_back({a, 0});
  } else {
    for (int a0 = 0; a0 <= k; ++a0)
      for (int a1 = 0; a0 + a1 <= k; ++a1)
        (a0 + a1 == k ? top : low).push_back({a0, a1});
  }

  auto deriv = [&](std::array<int, 2> a) {
    return fourier_multiply(f, [a](double x0, double x1) {
      return ipow(Complex(0.0, x0), a[0]) * ipow(Complex(0.0, x1), a[1]);
    });
  };

  double total = 0.0;
  for (auto a : low) total += deriv(a).value_norms().maxCoeff();

  // quotient offsets: every shift for dim 1, signed powers of two per axis
  // for dim 2 (the full offset set is quadratically many pairs there)
  std::vector<std::array<int, 2>> offs;
  if (g.dim == 1) {
    for (int d = 1; d <= N / 2; ++d) offs.push_back({d, 0});
  } else {
    std::vector<int> steps = {0};
    for (int d = 1; d <= N / 2; d *= 2) {
      steps.push_back(d);
      steps.push_back(-d);
    }
    for (int d0 : steps)
      for (int d1 : steps)
        if (d0 > 0 || (d0 == 0 && d1 > 0)) offs.push_back({d0, d1});
  }
  auto torus_len = [&](int d) {
    int a = ((d % N) + N) % N;
    return double(std::min(a, N - a)) * h;
  };

  for (auto a : top) {
    SampledField da = deriv(a);
    double sup = da.value_norms().maxCoeff();
    if (frac == 0.0) {
      total += sup;
      continue;
    }
    double quot = 0.0;
    for (auto o : offs) {
      double len = g.dim == 1 ? torus_len(o[0])
                              : std::hypot(torus_len(o[0]), torus_len(o[1]));
      if (len <= 0.0) continue;
      CArray diff = shifted_rows(da.values, g, o[0], o[1]) - da.values;
      SampledField dd{g, f.r_value, std::move(diff)};
      quot = std::max(quot, dd.value_norms().maxCoeff() / std::pow(len, frac));
    }
    total += sup + quot;
  }
  return total;
}

double space_norm(const SampledField& f, const DyadicFamily& fam,
                  const SpaceSpec& spec) {
  PowerWeight w = cell_averaged_weight(f.grid, spec.gamma);
  switch (spec.kind) {
    case SpaceKind::Lp:
      return weighted_lp_norm(f, spec.p, w);
    case SpaceKind::Besov:
      return besov_norm(f, fam, spec.s, spec.p, spec.q, w);
    case SpaceKind::TriebelLizorkin:
      return tl_norm(f, fam, spec.s, spec.p, spec.q, w);
    case SpaceKind::Bessel:
      return bessel_norm(f, spec.s, spec.p, w);
    case SpaceKind::Sobolev:
      return sobolev_norm(f, spec.m, spec.p, w);
    case SpaceKind::MixedLp:
      return mixed_norm(f, spec.p, spec.r, w);
  }
  fail("space_norm", "unknown space kind");
}

BandedSequence make_banded(std::vector<SampledField> member, double band_constant,
                           bool annular) {
  if (member.empty()) fail("make_banded", "sequence has no members");
  if (!(band_constant >= 1.0))
    fail("make_banded", "band constant must be >= 1, got " + num(band_constant));
  const GridSpec g = member.front().grid;
  for (std::size_t k = 0; k < member.size(); ++k) {
    if (!(member[k].grid == g)) fail("make_banded", "members live on different grids");
    const double hi = band_constant * std::ldexp(1.0, int(k));
    const double lo = (annular && k > 0) ? std::ldexp(1.0, int(k)) / band_constant : 0.0;
    double mass = out_of_band_mass(
        member[k], [lo, hi](double axi) { return axi >= lo && axi <= hi; });
    if (mass > 1e-12)
      fail("make_banded", "member " + std::to_string(k) +
                              " has out-of-band spectral mass " + num(mass));
  }
  return {band_constant, annular, std::move(member)};
}

double seq_norm(const BandedSequence& seq, double s, double p, double q,
                const PowerWeight& w, SeqOrder order, double r) {
  check_outer_p(p, "seq_norm");
  check_q(q, "seq_norm");
  if (seq.member.empty()) fail("seq_norm", "sequence has no members");
  check_weight(seq.member.front(), w, "seq_norm");

  const std::size_t K = seq.member.size();
  if (order == SeqOrder::Lp_outer) {
    Eigen::ArrayXd acc = Eigen::ArrayXd::Zero(w.grid.total_points());
    for (std::size_t k = 0; k < K; ++k) {
      Eigen::ArrayXd vn = std::pow(2.0, s * double(k)) * seq.member[k].value_norms();
      if (std::isinf(q))
        acc = acc.max(vn);
      else
        acc += vn.pow(q);
    }
    if (!std::isinf(q)) acc = acc.pow(1.0 / q);
    return weighted_lp_reduce(acc, p, w);
  }

  std::vector<double> a(K);
  for (std::size_t k = 0; k < K; ++k) {
    double nk = order == SeqOrder::mixed ? mixed_norm(seq.member[k], p, r, w)
                                         : weighted_lp_norm(seq.member[k], p, w);
    a[k] = std::pow(2.0, s * double(k)) * nk;
  }
  return lq_combine(a, q);
}

std::vector<EmbeddingRow> embedding_report(
    const SampledField& f, const DyadicFamily& fam,
    const std::vector<std::pair<SpaceSpec, SpaceSpec>>& pairs) {
  std::vector<EmbeddingRow> rows;
  rows.reserve(pairs.size());
  for (const auto& [src, tgt] : pairs) {
    EmbeddingRow row;
    row.source = src;
    row.target = tgt;
    row.source_norm = space_norm(f, fam, src);
    row.target_norm = space_norm(f, fam, tgt);
    row.ratio = row.source_norm > 0.0
                    ? row.target_norm / row.source_norm
                    : std::numeric_limits<double>::quiet_NaN();
    const bool same_family =
        (src.kind == SpaceKind::Besov || src.kind == SpaceKind::TriebelLizorkin) &&
        src.kind == tgt.kind;
    row.exact_pair = same_family && src.s == tgt.s && src.p == tgt.p &&
                     src.gamma == tgt.gamma && tgt.q >= src.q;
    rows.push_back(row);
  }
  return rows;
}

} // namespace lpw
