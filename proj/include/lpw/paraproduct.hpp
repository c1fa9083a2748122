#pragma once

#include "lpw/dyadic.hpp"

#include <vector>

// Bony paraproducts at finite truncation level. The product of two partial
// sums S^l m * S^l f splits exactly into three sums over block pairs (j, k):
// j <= k-2 (pi1), |j - k| <= 1 (pi2) and j >= k+2 (pi3). The split is an
// identity on the lattice, which makes it the main correctness oracle here.

namespace lpw {

struct ParaproductTriple {
  SampledField pi1, pi2, pi3;
  int level = 0;
};

// pi1 = sum_{k=2..l} (S^{k-2} m)(S_k f)
// pi2 = sum_{k=0..l} sum_{j in {-1,0,1}, 0 <= k+j <= l} (S_{k+j} m)(S_k f)
// pi3 = sum_{k=2..l} (S_k m)(S^{k-2} f)
// m scalar or with one column per component of f.
ParaproductTriple paraproducts(const SampledField& m, const SampledField& f,
                               const DyadicFamily& fam, int level);

struct TermSupport {
  int which = 0;       // 1, 2 or 3
  int k = 0;           // summation index of the term
  int j = 0;           // band offset (pi2 only, else 0)
  double lo = 0.0;     // expected support region lo <= |xi| <= hi
  double hi = 0.0;
  double out_mass = 0.0; // relative spectral mass outside the region
  bool pass = false;
  bool aliased = false;  // padded mode: true product mass beyond the native
                         // lattice edge, i.e. the native grid folds this term
};

struct SupportReport {
  std::vector<TermSupport> terms;
  double worst = 0.0;
  bool all_pass = true;
  bool padded = true;
  bool any_aliased = false;
};

// Re-derives every retained product term and measures its spectral mass
// outside the expected region (low-high products in [2^{k-3}, 2^{k+1}],
// comparable-frequency products in [0, 5*2^k]). With padded=true each
// product is formed on a 4x zero-padded grid, so sum frequencies up to
// (9/2) 2^k <= 3 xi_max stay below the finer lattice edge and the audit sees
// the true support; a term whose true spectrum reaches past the native edge
// gets the aliased flag. padded=false measures on the native lattice, which
// cannot see past its own edge: folded mass from top-band products lands back
// inside the stated regions, so the native numbers understate the spread and
// the aliased flag stays false there.
SupportReport support_audit(const SampledField& m, const SampledField& f,
                            const DyadicFamily& fam, int level,
                            bool padded = true);

struct Pi1Bounds {
  double bessel_ratio = 0.0; // ||pi1||_H(s,p,w) / (sup|m| ||f||_H(s,p,w))
  double tl_ratio = 0.0;     // same shape in F(s,p,q,w)
};

Pi1Bounds pi1_bound_check(const SampledField& m, const SampledField& f,
                          const DyadicFamily& fam, double s, double p,
                          double gamma, double q);

struct Pi23Bounds {
  double pi2_ratio = 0.0; // ||pi_i||_F(s,p,1,w) / (m_factor ||f||_F(s,p,inf,w))
  double pi3_ratio = 0.0;
  double m_factor = 0.0;  // ||profile of m||_B((1+mu)/r, r, inf; w_mu) on the t-axis
};

// m must depend only on the last coordinate; its 1-d profile carries the
// multiplier seminorm. (r, mu) come from the parameter selector.
Pi23Bounds pi23_bound_check(const SampledField& m, const SampledField& f,
                            const DyadicFamily& fam, double s, double p,
                            double gamma, double r, double mu);

} // namespace lpw
