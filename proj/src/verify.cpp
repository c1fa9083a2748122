#include "lpw/verify.hpp"

#include "lpw/maximal.hpp"
#include "lpw/multiplier.hpp"
#include "lpw/norms.hpp"
#include "lpw/paraproduct.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lpw {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SampledField random_field(const GridSpec& g, std::uint64_t seed, int components = 1) {
  FamilyParams p;
  p.k_lo = 0.0;
  p.k_hi = 0.4 * g.xi_max();
  p.components = components;
  return sample_family(FieldKind::random_bandlimited, p, g, seed);
}

void push(std::vector<CheckResult>& out, const std::string& name, double value,
          double bound, const std::string& detail = "") {
  out.push_back({name, value <= bound, value, bound, detail});
}

// value <= bound means pass; for "must be at least" checks, negate sense
void push_ge(std::vector<CheckResult>& out, const std::string& name, double value,
             double bound, const std::string& detail = "") {
  out.push_back({name, value >= bound, value, bound, detail});
}

std::vector<CheckResult> suite_grid() {
  std::vector<CheckResult> out;
  GridSpec g = make_grid(1, 16.0, 256);
  SampledField f = random_field(g, 11);

  SpectralField F = dft(f);
  double a = std::sqrt(f.values.abs2().sum());
  double b = std::sqrt(F.values.abs2().sum());
  push(out, "grid.parseval", std::abs(a - b) / b, 1e-12, "unitary transform");

  SampledField back = idft(F);
  push(out, "grid.roundtrip", (back.values - f.values).abs().maxCoeff() /
                                  f.values.abs().maxCoeff(),
       1e-10);

  // a pure lattice mode lands in a single bin with coefficient sqrt(M)
  const int mode = 9;
  SampledField em = zero_field(g);
  for (long r = 0; r < g.total_points(); ++r) {
    double x = g.coord(int(r));
    double xi = M_PI * mode / g.half_width;
    em.values(r, 0) = Complex(std::cos(xi * x), std::sin(xi * x));
  }
  SpectralField Em = dft(em);
  double peak = std::abs(Em.values(mode, 0));
  double off = std::sqrt(Em.values.abs2().sum() - peak * peak);
  push(out, "grid.mode_bin",
       std::abs(peak - std::sqrt(double(g.total_points()))) + off, 1e-9);

  SampledField up = upsample(f, 2);
  double worst = 0.0;
  for (int i = 0; i < g.n_per_axis; ++i)
    worst = std::max(worst, std::abs(up.values(2 * i, 0) - f.values(i, 0)));
  push(out, "grid.upsample_match", worst, 1e-10, "band-limited interpolation");

  GridSpec g2 = make_grid(2, 4.0, 32);
  SampledField f2 = random_field(g2, 12);
  SampledField back2 = idft(dft(f2));
  push(out, "grid.roundtrip_2d", (back2.values - f2.values).abs().maxCoeff() /
                                     f2.values.abs().maxCoeff(),
       1e-10);
  return out;
}

std::vector<CheckResult> suite_dyadic() {
  std::vector<CheckResult> out;
  for (int dim : {1, 2}) {
    GridSpec g = dim == 1 ? make_grid(1, 16.0, 1024) : make_grid(2, 4.0, 64);
    DyadicFamily fam = build_family(g, max_levels(g));
    std::string tag = dim == 1 ? "" : "_2d";

    double range_err = 0.0, leak = 0.0;
    Eigen::ArrayXd sum = Eigen::ArrayXd::Zero(g.total_points());
    for (int k = 0; k <= fam.levels; ++k) {
      range_err = std::max(range_err, std::max(-fam.band[k].minCoeff(),
                                               fam.band[k].maxCoeff() - 1.0));
      for (long r = 0; r < g.total_points(); ++r) {
        double axi = g.freq_abs(r);
        bool inside = k == 0 ? axi <= 1.5
                             : axi >= std::ldexp(1.0, k - 1) - 1e-12 &&
                                   axi <= 1.5 * std::ldexp(1.0, k) + 1e-12;
        if (!inside) leak = std::max(leak, std::abs(fam.band[k](r)));
      }
      sum += fam.band[k];
    }
    push(out, "dyadic.band_range" + tag, range_err, 1e-12);
    push(out, "dyadic.band_support" + tag, leak, 1e-12);

    double tel = 0.0;
    for (long r = 0; r < g.total_points(); ++r)
      if (g.freq_abs(r) <= std::ldexp(1.0, fam.levels))
        tel = std::max(tel, std::abs(sum(r) - 1.0));
    push(out, "dyadic.telescoping" + tag, tel, 1e-12);

    SampledField f = random_field(g, 21);
    auto blocks = all_blocks(fam, f);
    CArray acc = CArray::Zero(f.values.rows(), f.values.cols());
    for (const auto& bk : blocks) acc += bk.values;
    SampledField low = partial(fam, fam.levels, f);
    push(out, "dyadic.block_sum" + tag,
         (acc - low.values).abs().maxCoeff() / f.values.abs().maxCoeff(), 1e-12,
         "sum of blocks equals the top partial sum");
  }
  return out;
}

std::vector<CheckResult> suite_norms() {
  std::vector<CheckResult> out;
  GridSpec g = make_grid(1, 16.0, 512);
  DyadicFamily fam = build_family(g, max_levels(g));
  PowerWeight w0 = cell_averaged_weight(g, 0.0);
  PowerWeight wg = cell_averaged_weight(g, 0.5);
  SampledField f = random_field(g, 31);

  double b1 = besov_norm(f, fam, 0.4, 2.0, 1.0, wg);
  double b2 = besov_norm(f, fam, 0.4, 2.0, 2.0, wg);
  double binf = besov_norm(f, fam, 0.4, 2.0, kInf, wg);
  double mono = std::max(b2 - b1, binf - b2);
  push(out, "norms.lq_monotone", std::max(mono, 0.0) / b1, 1e-12,
       "q-increase never raises the norm");

  double tl22 = tl_norm(f, fam, 0.4, 2.0, 2.0, wg);
  push(out, "norms.pq_collapse", std::abs(tl22 - b2) / b2, 1e-12);

  double be0 = bessel_norm(f, 0.0, 2.5, wg);
  double lp = weighted_lp_norm(f, 2.5, wg);
  push(out, "norms.bessel_s0", std::abs(be0 - lp) / lp, 1e-12);

  double ex = randomized_norm(f, fam, 0.3, 2.0, w0, RandomizedMode::exact());
  double tf = tl_norm(f, fam, 0.3, 2.0, 2.0, w0);
  push(out, "norms.square_function", std::abs(ex - tf) / tf, 1e-10,
       "exact_p2 equals the (p,q)=(2,2) norm");

  SampledField h = random_field(g, 32);
  SampledField sum{g, f.r_value, CArray(f.values + h.values)};
  double tri = besov_norm(sum, fam, 0.4, 2.0, 2.0, wg) -
               besov_norm(f, fam, 0.4, 2.0, 2.0, wg) -
               besov_norm(h, fam, 0.4, 2.0, 2.0, wg);
  push(out, "norms.triangle", std::max(tri, 0.0) / b2, 1e-10);

  SampledField scaled{g, f.r_value, CArray(3.5 * f.values)};
  double hom = std::abs(besov_norm(scaled, fam, 0.4, 2.0, 2.0, wg) - 3.5 * b2);
  push(out, "norms.homogeneous", hom / b2, 1e-10);

  double t1 = tl_norm(f, fam, 0.3, 2.0, 1.0, w0);
  double hs = bessel_norm(f, 0.3, 2.0, w0);
  double tinf = tl_norm(f, fam, 0.3, 2.0, kInf, w0);
  bool bracket = t1 / hs > 1e-3 && t1 / hs < 1e3 && hs / tinf > 1e-3 && hs / tinf < 1e3;
  out.push_back({"norms.fh_bracket", bracket && t1 >= tinf,
                 t1 / hs, 1e3, "F(q=1) / H / F(q=inf) chain is ordered and comparable"});
  return out;
}

std::vector<CheckResult> suite_paraproduct() {
  std::vector<CheckResult> out;
  GridSpec g = make_grid(1, 16.0, 512);
  DyadicFamily fam = build_family(g, max_levels(g));
  SampledField m = random_field(g, 41);
  SampledField f = random_field(g, 42);

  const int l = fam.levels;
  auto triple = paraproducts(m, f, fam, l);
  SampledField lhs{g, 2.0,
                   CArray(triple.pi1.values + triple.pi2.values + triple.pi3.values)};
  SampledField rhs = pointwise_multiply(partial(fam, l, m), partial(fam, l, f));
  double scale = m.value_norms().maxCoeff() * f.value_norms().maxCoeff();
  push(out, "paraproduct.reconstruction",
       (lhs.values - rhs.values).abs().maxCoeff() / scale, 1e-10,
       "pi1+pi2+pi3 equals the truncated product");

  SampledField one = zero_field(g);
  one.values.setConstant(1.0);
  auto t1 = paraproducts(one, f, fam, l);
  push(out, "paraproduct.constant_m", t1.pi3.values.abs().maxCoeff(), 1e-12,
       "constant multiplier has no high-m part");

  SampledField m2{g, 2.0, CArray(2.0 * m.values)};
  auto ta = paraproducts(m2, f, fam, l);
  push(out, "paraproduct.bilinear",
       (ta.pi1.values - 2.0 * triple.pi1.values).abs().maxCoeff() /
           triple.pi1.values.abs().maxCoeff(),
       1e-10);

  auto audit = support_audit(m, f, fam, l, true);
  push(out, "paraproduct.support", audit.worst, 1e-10,
       "padded products stay in their stated regions");
  return out;
}

std::vector<CheckResult> suite_maximal() {
  std::vector<CheckResult> out;
  GridSpec g = make_grid(1, 16.0, 128);
  MaximalConfig cfg = dyadic_radii(g);

  SampledField c = zero_field(g);
  c.values.setConstant(Complex(0.0, -2.5));
  double cerr = (hl_maximal(c, cfg).values.real() - 2.5).abs().maxCoeff();
  push(out, "maximal.constant", cerr, 1e-12);

  SampledField f = random_field(g, 51);
  Eigen::ArrayXd mf = hl_maximal(f, cfg).values.col(0).real();
  double dom = (f.value_norms() - mf).maxCoeff();
  push(out, "maximal.dominates", std::max(dom, 0.0), 0.0, "M f >= |f| pointwise");

  SampledField h = random_field(g, 52);
  SampledField sum{g, 2.0, CArray(f.values + h.values)};
  Eigen::ArrayXd sub = hl_maximal(sum, cfg).values.col(0).real() - mf -
                       hl_maximal(h, cfg).values.col(0).real();
  push(out, "maximal.sublinear", sub.maxCoeff() / mf.maxCoeff(), 1e-10);

  Eigen::ArrayXd oracle = hl_maximal_all_radii(f).values.col(0).real();
  double factor = (oracle / mf).maxCoeff();
  push(out, "maximal.dyadic_factor", factor, 2.0,
       "dyadic radii within factor 2 of all radii");

  std::vector<SampledField> fam_fields;
  for (int i = 0; i < 4; ++i) fam_fields.push_back(random_field(g, 60 + i));
  double fs = fefferman_stein_check(fam_fields, 2.0, 2.0, 0.5);
  push(out, "maximal.fs_finite", fs, 50.0, "vector maximal ratio sane");
  return out;
}

std::vector<CheckResult> suite_embeddings() {
  std::vector<CheckResult> out;
  GridSpec g = make_grid(1, 16.0, 512);
  DyadicFamily fam = build_family(g, max_levels(g));
  SampledField f = random_field(g, 71);

  SpaceSpec b1{SpaceKind::Besov, 0.4, 2.0, 1.0, 0.0, 0, 2.0};
  SpaceSpec b2 = b1;
  b2.q = 2.0;
  SpaceSpec binf = b1;
  binf.q = kInf;
  auto rows = embedding_report(f, fam, {{b1, b2}, {b2, binf}});
  double worst = 0.0;
  for (const auto& r : rows)
    if (r.exact_pair) worst = std::max(worst, r.ratio - 1.0);
  push(out, "embeddings.exact_pairs", worst, 1e-12,
       "q-monotone pairs hold with constant 1");

  // banded sequence round trip: single nonzero member reduces to its norm
  DyadicFamily fam_small = build_family(g, 4);
  SampledField blk = block(fam_small, 3, f);
  std::vector<SampledField> members(5, zero_field(g));
  members[3] = blk;
  BandedSequence seq = make_banded(members, 2.0, false);
  PowerWeight w0 = cell_averaged_weight(g, 0.0);
  double sn = seq_norm(seq, 0.6, 2.0, 3.0, w0, SeqOrder::lq_outer);
  double direct = std::pow(2.0, 0.6 * 3.0) * weighted_lp_norm(blk, 2.0, w0);
  push(out, "embeddings.seq_single", std::abs(sn - direct) / direct, 1e-12);

  // low-pass partial sums against blocks at negative smoothness
  double s = -0.7;
  std::vector<double> lhs_e, rhs_e;
  for (int l = 0; l <= fam.levels; ++l) {
    lhs_e.push_back(std::pow(2.0, s * l) *
                    weighted_lp_norm(partial(fam, l, f), 2.0, w0));
    rhs_e.push_back(std::pow(2.0, s * l) * weighted_lp_norm(block(fam, l, f), 2.0, w0));
  }
  double lhs = lq_combine(lhs_e, 2.0), rhs = lq_combine(rhs_e, 2.0);
  double cbound = 1.0 / (1.0 - std::pow(2.0, s)) + 0.5;
  push(out, "embeddings.partial_sum_bound", lhs / rhs, cbound,
       "s<0 partial sums controlled by blocks");

  auto tec = type_embedding_check(f, fam, 0.3, 2.0, 0.0);
  bool ok = tec.lower_ratio > 1e-3 && tec.upper_ratio > 1e-3 &&
            std::isfinite(tec.lower_ratio) && std::isfinite(tec.upper_ratio);
  out.push_back({"embeddings.type_bracket", ok, tec.lower_ratio, 1e-3,
                 "F(tau) / H / F(q) bracket finite"});
  return out;
}

} // namespace

std::vector<CheckResult> verify_suite(const std::string& suite) {
  if (suite == "grid") return suite_grid();
  if (suite == "dyadic") return suite_dyadic();
  if (suite == "norms") return suite_norms();
  if (suite == "paraproduct") return suite_paraproduct();
  if (suite == "maximal") return suite_maximal();
  if (suite == "embeddings") return suite_embeddings();
  if (suite == "all") {
    std::vector<CheckResult> out;
    for (const char* s :
         {"grid", "dyadic", "norms", "paraproduct", "maximal", "embeddings"}) {
      auto part = verify_suite(s);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  throw std::invalid_argument("verify_suite: unknown suite '" + suite + "'");
}

} // namespace lpw
