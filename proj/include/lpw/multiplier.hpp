#pragma once

#include "lpw/norms.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

// Halfspace-multiplier experiments: the admissible parameter range for
// f -> 1_{t>=0} f, auxiliary-parameter selection, the indicator regularity
// audit, operator-norm estimation over adversarial families, and the
// refinement sweeps that detect the stable/blow-up boundary.

namespace lpw {

struct AdmissibleRange {
  double s_lo = 0.0; // -(1+gamma')/p', always s_hi - 1
  double s_hi = 0.0; // (1+gamma)/p
};

struct Admissibility {
  AdmissibleRange range;
  bool inside = false; // strict inequalities
};

// Throws unless p in (1, inf) and gamma in (-1, p-1) (the weight must be
// Muckenhoupt A_p).
Admissibility admissible(double s, double p, double gamma);

enum class SelectionCase { middle, upper, lower };

// Auxiliary (r, mu) for the paraproduct estimates, by regime of s:
//   middle  -1/p' < s < 1/p : mu = 0, r the midpoint of (1, 1/|s|) (r = 2
//                             when s = 0)
//   upper   1/p <= s        : r just below p,  mu/r = s - 1/p + eps
//   lower   s <= -1/p'      : r just below p', mu/r = -s - 1/p' + eps
// Throws if the resulting mu leaves (-1, r-1) (eps too large).
struct ParamSelection {
  SelectionCase which = SelectionCase::middle;
  double r = 2.0;
  double mu = 0.0;
  double eps = 0.0;
  double sigma = 0.0; // (1 + mu)/r
};

ParamSelection select_r_mu(double s, double p, double gamma, double eps);

// a_k = 2^{k sigma} || S_k f ||_{L^p(w)} for k = 0..K
std::vector<double> besov_profile(const SampledField& f, const DyadicFamily& fam,
                                  double sigma, double p, const PowerWeight& w);

struct IndicatorAudit {
  std::vector<double> a;   // profile of 1_{t>=0} * cutoff at sigma = (1+gamma)/p
  double sup = 0.0;
  double worst_top3_jump = 0.0; // max |log2 a_k - log2 a_{k-1}| over top 3 k
};

IndicatorAudit indicator_besov_audit(double p, double gamma,
                                     const DyadicFamily& fam);

// || m f ||_space / || f ||_space for space kind in {Bessel, Besov, TL}
double multiplier_ratio(const SampledField& m, const SampledField& f,
                        const SpaceSpec& space, const DyadicFamily& fam);

// short stable id: "H", "B<q>", "F<q>" with q printed as %g or "inf"
std::string space_id(const SpaceSpec& spec);
SpaceSpec parse_space_id(const std::string& id);

struct SweepFamilyMember {
  std::string id;
  FieldKind kind = FieldKind::gaussian;
  FamilyParams params;
};

// Hyperplane-concentrated bumps with scale 2^{-j}, j = j_min..j_max, plus
// modulated companions at frequency 3/scale. Members a grid cannot resolve
// (scale < 2h, or modulation beyond 0.45 xi_max) are omitted, so the list
// grows as N grows; the survivors represent the same continuum functions
// at every N.
std::vector<SweepFamilyMember> scale_ladder(const GridSpec& grid, int j_min,
                                            int j_max);

struct SweepConfig {
  int dim = 1;
  double half_width = 16.0;
  std::vector<int> n_list = {256, 512, 1024, 2048};
  std::vector<double> s_list = {0.3};
  std::vector<double> p_list = {2.0};
  std::vector<double> gamma_list = {0.0};
  std::vector<SpaceSpec> spaces; // s/p/gamma filled per cell; kind and q used
  int ladder_j_min = 0;
  int ladder_j_max = 8;
  std::uint64_t seed = 7;
  int workers = 1;
};

struct SweepRow {
  double s = 0.0, p = 2.0, gamma = 0.0;
  int n = 0;
  std::string family;
  std::string space;
  double ratio = 0.0;
  bool admissible_cell = false;
};

struct SweepReport {
  SweepConfig config;
  std::vector<SweepRow> rows; // canonical order: s, p, gamma, N, family, space

  std::string to_csv() const;  // header s,p,gamma,N,family,space,ratio,admissible
  std::string to_json() const; // same records plus run metadata
};

// One row per (cell x family member); ratio via multiplier_ratio against the
// halfspace indicator. Deterministic for a given config; workers > 1 only
// changes wall time, never bytes.
SweepReport operator_norm_sweep(const SweepConfig& config);

// per-N estimated operator norm for one cell: max ratio over the family
std::vector<std::pair<int, double>> cell_series(const SweepReport& rep, double s,
                                                double p, double gamma,
                                                const std::string& space);

// least-squares slope of log2(ratio) against log2(N)
double log2_slope(const std::vector<std::pair<int, double>>& series);

// largest s on the report's s-grid whose slope stays <= threshold
// (-inf if none)
double stable_boundary(const SweepReport& rep, double p, double gamma,
                       const std::string& space, double threshold);

struct HolderMultiplierCheck {
  double bessel_ratio = 0.0;
  double besov_ratio = 0.0; // q = 2
  double tl_ratio = 0.0;    // q = 2
};

// ratios || m f || / (holder_norm(m, sigma) || f ||); requires sigma > |s|
HolderMultiplierCheck holder_multiplier_check(const SampledField& m,
                                              const SampledField& f,
                                              const DyadicFamily& fam, double s,
                                              double p, double gamma,
                                              double sigma);

// || m f ||_H / (sup|m| ||f||_H + ||m||_H sup|f|), the multiplication
// algebra shape; requires s > 0, scalar m, Euclidean value norm
double algebra_check(const SampledField& m, const SampledField& f,
                     const DyadicFamily& fam, double s, double p, double gamma);

struct TypeEmbeddingCheck {
  double tau = 2.0, q = 2.0; // min(2, r_value), max(2, r_value)
  double tl_tau = 0.0;       // F(s, p, tau) norm
  double bessel = 0.0;
  double tl_q = 0.0;         // F(s, p, q) norm
  double lower_ratio = 0.0;  // tl_tau / bessel   (>= c)
  double upper_ratio = 0.0;  // bessel / tl_q     (>= c)
};

TypeEmbeddingCheck type_embedding_check(const SampledField& f,
                                        const DyadicFamily& fam, double s,
                                        double p, double gamma);

} // namespace lpw
