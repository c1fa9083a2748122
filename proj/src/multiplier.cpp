#include "lpw/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

namespace lpw {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::invalid_argument(where + ": " + what);
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void check_ap(double p, double gamma, const std::string& where) {
  if (!(p > 1.0) || !std::isfinite(p))
    fail(where, "p must lie in (1, inf), got " + num(p));
  if (!(gamma > -1.0) || !(gamma < p - 1.0))
    fail(where, "weight not A_p: gamma = " + num(gamma) +
                    " outside (-1, p-1) for p = " + num(p));
}

bool strictly_inside(double s, double p, double gamma) {
  if (!(p > 1.0) || !std::isfinite(p)) return false;
  if (!(gamma > -1.0) || !(gamma < p - 1.0)) return false;
  double hi = (1.0 + gamma) / p;
  return s > hi - 1.0 && s < hi;
}

} // namespace

Admissibility admissible(double s, double p, double gamma) {
  check_ap(p, gamma, "admissible");
  Admissibility a;
  a.range.s_hi = (1.0 + gamma) / p;
  a.range.s_lo = a.range.s_hi - 1.0; // equals -(1+gamma')/p' identically
  a.inside = s > a.range.s_lo && s < a.range.s_hi;
  return a;
}

ParamSelection select_r_mu(double s, double p, double gamma, double eps) {
  auto adm = admissible(s, p, gamma);
  if (!adm.inside)
    fail("select_r_mu", "s = " + num(s) + " outside the admissible range (" +
                            num(adm.range.s_lo) + ", " + num(adm.range.s_hi) + ")");
  if (!(eps > 0.0)) fail("select_r_mu", "eps must be positive");

  const double pd = p / (p - 1.0);
  ParamSelection sel;
  sel.eps = eps;

  if (s >= 1.0 / p) {
    sel.which = SelectionCase::upper;
    sel.r = p - std::min(0.05 * p, 0.5 * (p - 1.0));
    sel.mu = sel.r * (s - 1.0 / p + eps);
  } else if (s <= -1.0 / pd) {
    sel.which = SelectionCase::lower;
    sel.r = pd - std::min(0.05 * pd, 0.5 * (pd - 1.0));
    sel.mu = sel.r * (-s - 1.0 / pd + eps);
  } else {
    sel.which = SelectionCase::middle;
    sel.r = s == 0.0 ? 2.0 : 0.5 * (1.0 + 1.0 / std::abs(s));
    sel.mu = 0.0;
  }

  if (!(sel.mu > -1.0) || !(sel.mu < sel.r - 1.0))
    fail("select_r_mu", "mu = " + num(sel.mu) + " outside (-1, r-1) with r = " +
                            num(sel.r) + "; shrink eps");
  sel.sigma = (1.0 + sel.mu) / sel.r;
  return sel;
}

std::vector<double> besov_profile(const SampledField& f, const DyadicFamily& fam,
                                  double sigma, double p, const PowerWeight& w) {
  auto blocks = all_blocks(fam, f);
  std::vector<double> a(blocks.size());
  for (std::size_t k = 0; k < blocks.size(); ++k)
    a[k] = std::pow(2.0, sigma * double(k)) * weighted_lp_norm(blocks[k], p, w);
  return a;
}

IndicatorAudit indicator_besov_audit(double p, double gamma,
                                     const DyadicFamily& fam) {
  // the profile only needs the weight to be locally integrable, so gamma
  // may leave the A_p window here; the block norms stay finite either way
  if (!(p > 1.0) || !std::isfinite(p))
    fail("indicator_besov_audit", "p must lie in (1, inf), got " + num(p));
  if (!(gamma > -1.0))
    fail("indicator_besov_audit",
         "weight |t|^gamma not locally integrable: gamma = " + num(gamma));
  // the sampled staircase carries 1/|xi| tails that fold back at the lattice
  // edge and inflate the top octave, so measure the blocks on a 4x refined
  // lattice where the fold sits four octaves above the audited levels
  GridSpec fine = make_grid(fam.grid.dim, fam.grid.half_width,
                            4 * fam.grid.n_per_axis);
  DyadicFamily ffam = build_family(fine, fam.levels);
  SampledField ind = sample_family(FieldKind::indicator_halfspace, {}, fine);
  SampledField cut = sample_family(FieldKind::smooth_cutoff, {}, fine);
  SampledField f = pointwise_multiply(ind, cut);
  PowerWeight w = cell_averaged_weight(fine, gamma);

  IndicatorAudit audit;
  audit.a = besov_profile(f, ffam, (1.0 + gamma) / p, p, w);
  audit.sup = *std::max_element(audit.a.begin(), audit.a.end());
  const int K = int(audit.a.size()) - 1;
  for (int k = std::max(1, K - 2); k <= K; ++k) {
    if (!(audit.a[k] > 0.0) || !(audit.a[k - 1] > 0.0)) {
      audit.worst_top3_jump = kInf;
      break;
    }
    double jump = std::abs(std::log2(audit.a[k]) - std::log2(audit.a[k - 1]));
    audit.worst_top3_jump = std::max(audit.worst_top3_jump, jump);
  }
  return audit;
}

double multiplier_ratio(const SampledField& m, const SampledField& f,
                        const SpaceSpec& space, const DyadicFamily& fam) {
  if (space.kind != SpaceKind::Bessel && space.kind != SpaceKind::Besov &&
      space.kind != SpaceKind::TriebelLizorkin)
    fail("multiplier_ratio", "space kind must be Bessel, Besov or TL");
  double den = space_norm(f, fam, space);
  if (!(den > 0.0)) fail("multiplier_ratio", "zero denominator");
  return space_norm(pointwise_multiply(m, f), fam, space) / den;
}

std::string space_id(const SpaceSpec& spec) {
  switch (spec.kind) {
    case SpaceKind::Bessel:
      return "H";
    case SpaceKind::Besov:
      return std::isinf(spec.q) ? "Binf" : "B" + num(spec.q);
    case SpaceKind::TriebelLizorkin:
      return std::isinf(spec.q) ? "Finf" : "F" + num(spec.q);
    default:
      fail("space_id", "only H, B and F spaces appear in sweeps");
  }
}

SpaceSpec parse_space_id(const std::string& id) {
  SpaceSpec spec;
  if (id == "H") {
    spec.kind = SpaceKind::Bessel;
    return spec;
  }
  if (id.size() < 2) fail("parse_space_id", "unknown space id '" + id + "'");
  if (id[0] == 'B')
    spec.kind = SpaceKind::Besov;
  else if (id[0] == 'F')
    spec.kind = SpaceKind::TriebelLizorkin;
  else
    fail("parse_space_id", "unknown space id '" + id + "'");
  std::string qs = id.substr(1);
  if (qs == "inf") {
    spec.q = kInf;
  } else {
    char* end = nullptr;
    spec.q = std::strtod(qs.c_str(), &end);
    if (end == qs.c_str() || *end != '\0' || !(spec.q >= 1.0))
      fail("parse_space_id", "bad q in space id '" + id + "'");
  }
  return spec;
}

std::vector<SweepFamilyMember> scale_ladder(const GridSpec& grid, int j_min,
                                            int j_max) {
  if (j_min < 0 || j_max < j_min)
    fail("scale_ladder", "need 0 <= j_min <= j_max");
  const double h = grid.spacing();
  const double cap = 0.45 * grid.xi_max();
  std::vector<SweepFamilyMember> out;
  for (int j = j_min; j <= j_max; ++j) {
    const double scale = std::ldexp(1.0, -j);
    if (scale < 2.0 * h) continue; // bump narrower than two cells
    char idb[32];
    std::snprintf(idb, sizeof idb, "ladder_j%02d", j);
    SweepFamilyMember plain;
    plain.id = idb;
    plain.kind = FieldKind::concentrated_near_hyperplane;
    plain.params.scale = scale;
    out.push_back(plain);

    const double freq = 3.0 / scale;
    if (freq <= cap) {
      SweepFamilyMember mod = plain;
      mod.id = std::string(idb) + "_mod";
      mod.params.freq = freq;
      out.push_back(mod);
    }
  }
  return out;
}

namespace {

struct SweepContext {
  GridSpec grid;
  DyadicFamily fam;
  SampledField indicator;
  std::vector<SweepFamilyMember> members;
  std::vector<SampledField> member_fields;
};

void validate_config(const SweepConfig& c) {
  if (c.dim != 1 && c.dim != 2) fail("operator_norm_sweep", "dim must be 1 or 2");
  if (!(c.half_width > 0.0)) fail("operator_norm_sweep", "half_width must be positive");
  if (c.n_list.empty()) fail("operator_norm_sweep", "empty N list");
  if (c.s_list.empty()) fail("operator_norm_sweep", "empty s grid");
  if (c.p_list.empty()) fail("operator_norm_sweep", "empty p grid");
  if (c.gamma_list.empty()) fail("operator_norm_sweep", "empty gamma grid");
  if (c.spaces.empty()) fail("operator_norm_sweep", "empty space list");
  for (const auto& sp : c.spaces)
    if (sp.kind != SpaceKind::Bessel && sp.kind != SpaceKind::Besov &&
        sp.kind != SpaceKind::TriebelLizorkin)
      fail("operator_norm_sweep", "sweep spaces must be H, B or F");
  if (c.workers < 1) fail("operator_norm_sweep", "workers must be >= 1");
}

} // namespace

SweepReport operator_norm_sweep(const SweepConfig& config) {
  validate_config(config);

  std::vector<SweepContext> ctx;
  ctx.reserve(config.n_list.size());
  for (int n : config.n_list) {
    SweepContext c;
    c.grid = make_grid(config.dim, config.half_width, n);
    c.fam = build_family(c.grid, max_levels(c.grid));
    c.indicator = sample_family(FieldKind::indicator_halfspace, {}, c.grid);
    c.members = scale_ladder(c.grid, config.ladder_j_min, config.ladder_j_max);
    for (const auto& mem : c.members)
      c.member_fields.push_back(
          sample_family(mem.kind, mem.params, c.grid, config.seed));
    ctx.push_back(std::move(c));
  }

  // canonical row order: s, p, gamma, N, family, space
  struct Job {
    double s, p, gamma;
    std::size_t ctx_i, mem_i, space_i;
  };
  std::vector<Job> jobs;
  for (double s : config.s_list)
    for (double p : config.p_list)
      for (double gamma : config.gamma_list)
        for (std::size_t ci = 0; ci < ctx.size(); ++ci)
          for (std::size_t mi = 0; mi < ctx[ci].members.size(); ++mi)
            for (std::size_t si = 0; si < config.spaces.size(); ++si)
              jobs.push_back({s, p, gamma, ci, mi, si});

  SweepReport rep;
  rep.config = config;
  rep.rows.resize(jobs.size());

  auto run_range = [&](std::size_t worker, std::size_t stride) {
    for (std::size_t i = worker; i < jobs.size(); i += stride) {
      const Job& jb = jobs[i];
      const SweepContext& c = ctx[jb.ctx_i];
      SpaceSpec spec = config.spaces[jb.space_i];
      spec.s = jb.s;
      spec.p = jb.p;
      spec.gamma = jb.gamma;
      SweepRow row;
      row.s = jb.s;
      row.p = jb.p;
      row.gamma = jb.gamma;
      row.n = c.grid.n_per_axis;
      row.family = c.members[jb.mem_i].id;
      row.space = space_id(spec);
      row.ratio = multiplier_ratio(c.indicator, c.member_fields[jb.mem_i], spec, c.fam);
      row.admissible_cell = strictly_inside(jb.s, jb.p, jb.gamma);
      rep.rows[i] = std::move(row);
    }
  };

  const std::size_t workers =
      std::min<std::size_t>(config.workers, std::max<std::size_t>(jobs.size(), 1));
  if (workers <= 1) {
    run_range(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back(run_range, w, workers);
    for (auto& t : pool) t.join();
  }
  return rep;
}

std::string SweepReport::to_csv() const {
  std::string out = "s,p,gamma,N,family,space,ratio,admissible\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%g,%g,%g,%d,%s,%s,%.12g,%d\n", r.s, r.p,
                  r.gamma, r.n, r.family.c_str(), r.space.c_str(), r.ratio,
                  r.admissible_cell ? 1 : 0);
    out += buf;
  }
  return out;
}

std::string SweepReport::to_json() const {
  char buf[320];
  std::string out = "{\n  \"meta\": {";
  std::snprintf(buf, sizeof buf,
                "\"dim\": %d, \"half_width\": %g, \"seed\": %llu, "
                "\"ladder_j_min\": %d, \"ladder_j_max\": %d, \"levels\": [",
                config.dim, config.half_width,
                static_cast<unsigned long long>(config.seed),
                config.ladder_j_min, config.ladder_j_max);
  out += buf;
  for (std::size_t i = 0; i < config.n_list.size(); ++i) {
    GridSpec g = make_grid(config.dim, config.half_width, config.n_list[i]);
    std::snprintf(buf, sizeof buf, "%s{\"N\": %d, \"K\": %d}",
                  i ? ", " : "", config.n_list[i], max_levels(g));
    out += buf;
  }
  out += "]},\n  \"rows\": [\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    std::snprintf(buf, sizeof buf,
                  "    {\"s\": %g, \"p\": %g, \"gamma\": %g, \"N\": %d, "
                  "\"family\": \"%s\", \"space\": \"%s\", \"ratio\": %.12g, "
                  "\"admissible\": %s}%s\n",
                  r.s, r.p, r.gamma, r.n, r.family.c_str(), r.space.c_str(),
                  r.ratio, r.admissible_cell ? "true" : "false",
                  i + 1 == rows.size() ? "" : ",");
    out += buf;
  }
  out += "  ]\n}\n";
  return out;
}

std::vector<std::pair<int, double>> cell_series(const SweepReport& rep, double s,
                                                double p, double gamma,
                                                const std::string& space) {
  auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12; };
  std::vector<std::pair<int, double>> series;
  for (int n : rep.config.n_list) {
    double best = -1.0;
    for (const auto& r : rep.rows)
      if (r.n == n && r.space == space && close(r.s, s) && close(r.p, p) &&
          close(r.gamma, gamma))
        best = std::max(best, r.ratio);
    if (best >= 0.0) series.emplace_back(n, best);
  }
  return series;
}

double log2_slope(const std::vector<std::pair<int, double>>& series) {
  if (series.size() < 2) fail("log2_slope", "need at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [n, v] : series) {
    if (!(v > 0.0)) fail("log2_slope", "nonpositive ratio in series");
    double x = std::log2(double(n)), y = std::log2(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double k = double(series.size());
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

double stable_boundary(const SweepReport& rep, double p, double gamma,
                       const std::string& space, double threshold) {
  double best = -kInf;
  for (double s : rep.config.s_list) {
    auto series = cell_series(rep, s, p, gamma, space);
    if (series.size() < 2) continue;
    if (log2_slope(series) <= threshold) best = std::max(best, s);
  }
  return best;
}

HolderMultiplierCheck holder_multiplier_check(const SampledField& m,
                                              const SampledField& f,
                                              const DyadicFamily& fam, double s,
                                              double p, double gamma,
                                              double sigma) {
  if (!(sigma > std::abs(s)))
    fail("holder_multiplier_check", "need sigma > |s|, got sigma = " + num(sigma) +
                                        ", s = " + num(s));
  double hn = holder_norm(m, sigma);
  if (!(hn > 0.0)) fail("holder_multiplier_check", "zero multiplier norm");
  SampledField mf = pointwise_multiply(m, f);
  PowerWeight w = cell_averaged_weight(f.grid, gamma);

  HolderMultiplierCheck out;
  double fb = bessel_norm(f, s, p, w);
  double fB = besov_norm(f, fam, s, p, 2.0, w);
  double fF = tl_norm(f, fam, s, p, 2.0, w);
  if (!(fb > 0.0) || !(fB > 0.0) || !(fF > 0.0))
    fail("holder_multiplier_check", "zero denominator");
  out.bessel_ratio = bessel_norm(mf, s, p, w) / (hn * fb);
  out.besov_ratio = besov_norm(mf, fam, s, p, 2.0, w) / (hn * fB);
  out.tl_ratio = tl_norm(mf, fam, s, p, 2.0, w) / (hn * fF);
  return out;
}

double algebra_check(const SampledField& m, const SampledField& f,
                     const DyadicFamily& fam, double s, double p, double gamma) {
  (void)fam;
  if (!(s > 0.0)) fail("algebra_check", "the algebra estimate needs s > 0");
  if (m.components() != 1) fail("algebra_check", "multiplier must be scalar");
  if (f.r_value != 2.0)
    fail("algebra_check", "value norm must be Euclidean (r_value = 2)");
  PowerWeight w = cell_averaged_weight(f.grid, gamma);
  double m_sup = m.value_norms().maxCoeff();
  double f_sup = f.value_norms().maxCoeff();
  double rhs = m_sup * bessel_norm(f, s, p, w) + bessel_norm(m, s, p, w) * f_sup;
  if (!(rhs > 0.0)) fail("algebra_check", "zero denominator");
  return bessel_norm(pointwise_multiply(m, f), s, p, w) / rhs;
}

TypeEmbeddingCheck type_embedding_check(const SampledField& f,
                                        const DyadicFamily& fam, double s,
                                        double p, double gamma) {
  PowerWeight w = cell_averaged_weight(f.grid, gamma);
  TypeEmbeddingCheck out;
  out.tau = std::min(2.0, f.r_value);
  out.q = std::max(2.0, f.r_value);
  out.tl_tau = tl_norm(f, fam, s, p, out.tau, w);
  out.bessel = bessel_norm(f, s, p, w);
  out.tl_q = tl_norm(f, fam, s, p, out.q, w);
  if (!(out.bessel > 0.0) || !(out.tl_q > 0.0))
    fail("type_embedding_check", "zero field");
  out.lower_ratio = out.tl_tau / out.bessel;
  out.upper_ratio = out.bessel / out.tl_q;
  return out;
}

} // namespace lpw
