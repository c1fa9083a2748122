#include "lpw/weights.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace lpw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::invalid_argument(where + ": " + what);
}

std::string num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// antiderivative of |t|^gamma on a half-line not containing 0
double anti(double t, double gamma) {
  if (gamma == -1.0) return t > 0 ? std::log(t) : -std::log(-t);
  double s = t >= 0 ? 1.0 : -1.0;
  return s * std::pow(std::abs(t), gamma + 1.0) / (gamma + 1.0);
}

// 6-point Gauss-Legendre on [-1, 1]
constexpr double kGx[6] = {-0.9324695142031521, -0.6612093864662645,
                           -0.2386191860831969, 0.2386191860831969,
                           0.6612093864662645,  0.9324695142031521};
constexpr double kGw[6] = {0.1713244923791704, 0.3607615730481386,
                           0.4679139345726910, 0.4679139345726910,
                           0.3607615730481386, 0.1713244923791704};

double gl_integral_1d(double a, double b, const std::function<double(double)>& f) {
  double mid = 0.5 * (a + b), half = 0.5 * (b - a), acc = 0.0;
  for (int i = 0; i < 6; ++i) acc += kGw[i] * f(mid + half * kGx[i]);
  return acc * half;
}

double gl_integral_2d(double ax, double bx, double ay, double by,
                      const std::function<double(double, double)>& f) {
  double mx = 0.5 * (ax + bx), hx = 0.5 * (bx - ax);
  double my = 0.5 * (ay + by), hy = 0.5 * (by - ay);
  double acc = 0.0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      acc += kGw[i] * kGw[j] * f(mx + hx * kGx[i], my + hy * kGx[j]);
  return acc * hx * hy;
}

// exact integral of |x|^gamma over the centered square [-c, c]^2 via polar
// coordinates; the square boundary is r = c/cos(theta) on each octant.
double centered_square_radial_integral(double c, double gamma) {
  // 8 * int_0^{pi/4} (c/cos t)^{gamma+2}/(gamma+2) dt, composite GL panels
  const int panels = 16;
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    double a = (M_PI / 4.0) * p / panels, b = (M_PI / 4.0) * (p + 1) / panels;
    acc += gl_integral_1d(a, b, [&](double th) {
      return std::pow(c / std::cos(th), gamma + 2.0) / (gamma + 2.0);
    });
  }
  return 8.0 * acc;
}

Eigen::ArrayXd axis_cell_averages(const GridSpec& g, double gamma,
                                  double clamp_delta) {
  const int N = g.n_per_axis;
  const double h = g.spacing();
  Eigen::ArrayXd w1(N);
  for (int j = 0; j < N; ++j) {
    double lo = g.coord(j) - 0.5 * h, hi = g.coord(j) + 0.5 * h;
    if (gamma == 0.0) {
      w1(j) = 1.0;
    } else if (j == 0) {
      // the cell of t = -L wraps around the seam; both torus halves see
      // |t| in [L - h/2, L], so the cell sum telescopes to the exact
      // integral of the weight over one period
      w1(j) = 2.0 *
              (anti(g.half_width, gamma) - anti(g.half_width - 0.5 * h, gamma)) /
              h;
    } else if (gamma > -1.0) {
      w1(j) = (anti(hi, gamma) - anti(lo, gamma)) / h;
    } else if (lo < 0.0 && hi > 0.0) {
      // straddling cell, excise (-delta h, delta h)
      double d = clamp_delta * h;
      w1(j) = ((anti(-d, gamma) - anti(lo, gamma)) +
               (anti(hi, gamma) - anti(d, gamma))) /
              h;
    } else {
      w1(j) = (anti(hi, gamma) - anti(lo, gamma)) / h;
    }
  }
  return w1;
}

} // namespace

double power_cell_average(double a, double b, double gamma) {
  if (!(b > a)) fail("power_cell_average", "need a < b");
  if (gamma == 0.0) return 1.0;
  if (gamma <= -1.0 && a <= 0.0 && b >= 0.0) return kInf;
  return (anti(b, gamma) - anti(a, gamma)) / (b - a);
}

PowerWeight cell_averaged_weight(const GridSpec& grid, double gamma,
                                 WeightKind kind, double clamp_delta) {
  if (!std::isfinite(gamma)) fail("cell_averaged_weight", "gamma must be finite");
  if (clamp_delta < 0.0 || clamp_delta >= 0.5)
    fail("cell_averaged_weight", "clamp_delta must lie in [0, 1/2)");
  PowerWeight w;
  w.kind = kind;
  w.gamma = gamma;
  w.clamp_delta = clamp_delta;
  w.grid = grid;

  if (kind == WeightKind::axis_last || grid.dim == 1) {
    // |t|^gamma and |x|^gamma coincide in one dimension
    if (gamma <= -1.0 && clamp_delta == 0.0)
      fail("cell_averaged_weight",
           "gamma = " + num(gamma) +
               " is not locally integrable on the axis; need gamma > -1 or "
               "clamp_delta > 0");
    Eigen::ArrayXd w1 = axis_cell_averages(grid, gamma, clamp_delta);
    if (grid.dim == 1) {
      w.cell_avg = w1;
    } else {
      const int N = grid.n_per_axis;
      w.cell_avg.resize(grid.total_points());
      for (int i0 = 0; i0 < N; ++i0) w.cell_avg.segment(long(i0) * N, N) = w1;
    }
    return w;
  }

  // radial, dim == 2
  if (gamma <= -2.0)
    fail("cell_averaged_weight",
         "radial gamma = " + num(gamma) + " is not locally integrable; need gamma > -2");
  const double h = grid.spacing();
  w.cell_avg.resize(grid.total_points());
  auto wfun = [gamma](double x, double y) {
    return std::pow(std::hypot(x, y), gamma);
  };
  for (long r = 0; r < grid.total_points(); ++r) {
    auto x = grid.point(r);
    double d = std::hypot(x[0], x[1]);
    double integral;
    if (d == 0.0) {
      integral = centered_square_radial_integral(0.5 * h, gamma);
    } else if (d < 3.0 * h) {
      // near the singularity: 4x4 subcells keep the quadrature honest
      integral = 0.0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          integral += gl_integral_2d(
              x[0] - 0.5 * h + a * h / 4.0, x[0] - 0.5 * h + (a + 1) * h / 4.0,
              x[1] - 0.5 * h + b * h / 4.0, x[1] - 0.5 * h + (b + 1) * h / 4.0,
              wfun);
    } else {
      integral = gl_integral_2d(x[0] - 0.5 * h, x[0] + 0.5 * h, x[1] - 0.5 * h,
                                x[1] + 0.5 * h, wfun);
    }
    w.cell_avg(r) = integral / (h * h);
  }
  return w;
}

DualExponents dual_exponents(double p, double gamma) {
  if (!(p > 1.0) || !std::isfinite(p))
    fail("dual_exponents", "p must lie in (1, inf), got " + num(p));
  return {p / (p - 1.0), -gamma / (p - 1.0)};
}

double weighted_lp_reduce(const Eigen::ArrayXd& pointwise, double p,
                          const PowerWeight& w) {
  if (pointwise.rows() != w.grid.total_points())
    fail("weighted_lp_reduce", "array length does not match the weight's grid");
  if (std::isinf(p)) return pointwise.maxCoeff();
  if (!(p >= 1.0)) fail("weighted_lp_reduce", "p must lie in [1, inf], got " + num(p));
  const double vol = std::pow(w.grid.spacing(), w.grid.dim);
  double acc = (pointwise.pow(p) * w.cell_avg).sum() * vol;
  return std::pow(acc, 1.0 / p);
}

double weighted_lp_norm(const SampledField& f, double p, const PowerWeight& w) {
  if (!(f.grid == w.grid)) fail("weighted_lp_norm", "field and weight grids differ");
  return weighted_lp_reduce(f.value_norms(), p, w);
}

double mixed_reduce(const Eigen::ArrayXd& pointwise, double p, double r,
                    const PowerWeight& w) {
  const GridSpec& g = w.grid;
  if (g.dim != 2) fail("mixed_reduce", "mixed norms need a 2-d grid");
  if (w.kind != WeightKind::axis_last)
    fail("mixed_reduce", "mixed norms take an axis_last weight");
  if (pointwise.rows() != g.total_points())
    fail("mixed_reduce", "array length does not match the weight's grid");
  if (!std::isinf(p) && !(p >= 1.0)) fail("mixed_reduce", "p must lie in [1, inf]");
  if (!std::isinf(r) && !(r >= 1.0)) fail("mixed_reduce", "r must lie in [1, inf]");
  const int N = g.n_per_axis;
  const double h = g.spacing();
  Eigen::ArrayXd inner(N);
  for (int i0 = 0; i0 < N; ++i0) {
    auto seg = pointwise.segment(long(i0) * N, N);
    auto wseg = w.cell_avg.segment(long(i0) * N, N);
    if (std::isinf(r))
      inner(i0) = seg.maxCoeff();
    else
      inner(i0) = std::pow((seg.pow(r) * wseg).sum() * h, 1.0 / r);
  }
  if (std::isinf(p)) return inner.maxCoeff();
  return std::pow(inner.pow(p).sum() * h, 1.0 / p);
}

double mixed_norm(const SampledField& f, double p, double r, const PowerWeight& w) {
  if (!(f.grid == w.grid)) fail("mixed_norm", "field and weight grids differ");
  return mixed_reduce(f.value_norms(), p, r, w);
}

double ap_constant(const PowerWeight& w, double p, const GridSpec& grid) {
  if (!(grid == w.grid)) fail("ap_constant", "weight was built on a different grid");
  if (!(p > 1.0) || !std::isfinite(p))
    fail("ap_constant", "p must lie in (1, inf), got " + num(p));
  if (!w.cell_avg.isFinite().all() || (w.cell_avg <= 0.0).any()) return kInf;

  const double e = 1.0 - dual_exponents(p, 0.0).p_dual; // 1 - p'
  Eigen::ArrayXd a = w.cell_avg;
  Eigen::ArrayXd b = a.pow(e);
  const int N = grid.n_per_axis;
  double best = 0.0;

  if (grid.dim == 1) {
    long blocks = N;
    while (blocks >= 1) {
      double cells = double(N) / blocks;
      for (long i = 0; i < blocks; ++i) {
        double q = (a(i) / cells) * std::pow(b(i) / cells, p - 1.0);
        best = std::max(best, q);
      }
      if (blocks == 1) break;
      for (long i = 0; i < blocks / 2; ++i) {
        a(i) = a(2 * i) + a(2 * i + 1);
        b(i) = b(2 * i) + b(2 * i + 1);
      }
      blocks /= 2;
    }
    return best;
  }

  // dim == 2: fold 2x2 children into parents level by level
  long side = N;
  while (side >= 1) {
    double cells = double(N) / side * (double(N) / side);
    for (long i = 0; i < side; ++i)
      for (long j = 0; j < side; ++j) {
        double q = (a(i * side + j) / cells) *
                   std::pow(b(i * side + j) / cells, p - 1.0);
        best = std::max(best, q);
      }
    if (side == 1) break;
    long half = side / 2;
    Eigen::ArrayXd a2(half * half), b2(half * half);
    for (long i = 0; i < half; ++i)
      for (long j = 0; j < half; ++j) {
        a2(i * half + j) = a(2 * i * side + 2 * j) + a(2 * i * side + 2 * j + 1) +
                           a((2 * i + 1) * side + 2 * j) +
                           a((2 * i + 1) * side + 2 * j + 1);
        b2(i * half + j) = b(2 * i * side + 2 * j) + b(2 * i * side + 2 * j + 1) +
                           b((2 * i + 1) * side + 2 * j) +
                           b((2 * i + 1) * side + 2 * j + 1);
      }
    a = a2;
    b = b2;
    side = half;
  }
  return best;
}

} // namespace lpw
