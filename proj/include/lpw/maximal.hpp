#pragma once

#include "lpw/weights.hpp"

#include <vector>

// Hardy-Littlewood maximal operator on the periodic grid, restricted to a
// dyadic radius set so each field costs O(N log N) via prefix sums, plus the
// vector-valued (Fefferman-Stein) and mixed-norm maximal inequality checks.

namespace lpw {

struct MaximalConfig {
  // ball radii, in physical units; balls are centered at sample points and
  // wrap periodically. Must lie in (grid spacing, 2L].
  std::vector<double> radii;
};

// default radius ladder 2L, L, L/2, ..., 2h
MaximalConfig dyadic_radii(const GridSpec& grid);

// (M f)(x) = max over the radius set (and the degenerate single-cell ball,
// so M f >= |f| always) of the average of |f|_X over the lattice ball.
SampledField hl_maximal(const SampledField& f, const MaximalConfig& cfg);

// brute-force variant taking every realizable lattice radius; the dyadic
// ladder must stay within a factor 2 of this on small grids
SampledField hl_maximal_all_radii(const SampledField& f);

// || (M f_k)_k ||_{L^p(w_gamma; l^q)} / || (f_k)_k ||_{same}
double fefferman_stein_check(const std::vector<SampledField>& fields, double p,
                             double q, double gamma);

// same ratio in the mixed norm L^p(x'; L^r(t, w_gamma)) with l^q inside;
// needs a 2-d grid
double mixed_maximal_check(const std::vector<SampledField>& fields, double p,
                           double r, double q, double gamma);

} // namespace lpw
