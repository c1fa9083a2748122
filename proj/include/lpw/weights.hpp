#pragma once

#include "lpw/grid.hpp"

// Muckenhoupt power weights with exact (or clamped) per-cell averages, the
// weighted Lebesgue and mixed-norm reductions built on them, and a discrete
// A_p characteristic over dyadic sub-cubes of the grid.

namespace lpw {

enum class WeightKind {
  axis_last, // w(x) = |t|^gamma, t the last coordinate
  radial,    // w(x) = |x|^gamma
};

struct PowerWeight {
  WeightKind kind = WeightKind::axis_last;
  double gamma = 0.0;
  double clamp_delta = 0.0; // > 0: singular cell integrated over cell \ (-dh, dh)
  GridSpec grid;
  Eigen::ArrayXd cell_avg; // one entry per grid point (cell midpoint rule)
};

// Exact mean of |t|^gamma over [a, b] (a < b). Returns +inf when the
// integral diverges (gamma <= -1 with 0 inside the closure).
double power_cell_average(double a, double b, double gamma);

// Cell layout: each sample x_j owns the centered cell [x_j - h/2, x_j + h/2).
// axis_last requires gamma > -1, or any gamma with clamp_delta in (0, 1/2)
// which excises (-delta h, delta h) from the straddling cell. radial (dim 2)
// requires gamma > -2; the origin cell is integrated exactly in polar form.
PowerWeight cell_averaged_weight(const GridSpec& grid, double gamma,
                                 WeightKind kind = WeightKind::axis_last,
                                 double clamp_delta = 0.0);

struct DualExponents {
  double p_dual;     // p' = p/(p-1)
  double gamma_dual; // gamma' = -gamma/(p-1)
};
DualExponents dual_exponents(double p, double gamma);

// (sum_x g(x)^p w(x) h^d)^{1/p} for a pointwise nonnegative array g;
// p = inf takes the plain sup (weight ignored).
double weighted_lp_reduce(const Eigen::ArrayXd& pointwise, double p,
                          const PowerWeight& w);

// L^p(w) norm of the pointwise value norms of f.
double weighted_lp_norm(const SampledField& f, double p, const PowerWeight& w);

// L^p(x'; L^r(t, w)) norm on a 2-d grid: weighted L^r along the last axis
// first, then unweighted L^p across the remaining axis. w must be axis_last.
double mixed_norm(const SampledField& f, double p, double r, const PowerWeight& w);
double mixed_reduce(const Eigen::ArrayXd& pointwise, double p, double r,
                    const PowerWeight& w);

// sup over dyadic sub-cubes Q (blocks of 2^m cells per axis, all levels) of
//   avg_Q(w) * avg_Q(w^{1-p'})^{p-1}
// computed from the piecewise-constant cell-averaged weight. Returns +inf
// if any cell average is zero or non-finite.
double ap_constant(const PowerWeight& w, double p, const GridSpec& grid);

} // namespace lpw
