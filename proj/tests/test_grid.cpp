#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lpw/dyadic.hpp"
#include "lpw/grid.hpp"
#include "oracles.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

using namespace lpw;

namespace {

SampledField random_field(const GridSpec& g, std::uint64_t seed, int comps = 1) {
  FamilyParams p;
  p.k_lo = 0.0;
  p.k_hi = 0.4 * g.xi_max();
  p.components = comps;
  return sample_family(FieldKind::random_bandlimited, p, g, seed);
}

} // namespace

TEST_CASE("make_grid rejects bad parameters") {
  CHECK_THROWS_AS(make_grid(3, 1.0, 8), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(0, 1.0, 8), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(1, 0.0, 8), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(1, -2.0, 8), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(1, 1.0, 12), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(1, 1.0, 4), std::invalid_argument);
  GridSpec g = make_grid(2, 4.0, 16);
  CHECK(g.total_points() == 256);
  CHECK(g.spacing() == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("transform matches the direct sum, dim 1") {
  GridSpec g = make_grid(1, 16.0, 64);
  SampledField f = random_field(g, 11, 2);
  SpectralField F = dft(f);
  CArray ref = oracle::direct_dft(f);
  double scale = ref.abs().maxCoeff();
  CHECK(oracle::max_abs_diff(F.values, ref) <= 1e-9 * scale);
}

TEST_CASE("transform matches the direct sum, dim 2") {
  GridSpec g = make_grid(2, 4.0, 16);
  SampledField f = random_field(g, 5);
  SpectralField F = dft(f);
  CArray ref = oracle::direct_dft(f);
  double scale = ref.abs().maxCoeff();
  CHECK(oracle::max_abs_diff(F.values, ref) <= 1e-9 * scale);
}

TEST_CASE("roundtrip and Parseval") {
  for (int dim : {1, 2}) {
    GridSpec g = dim == 1 ? make_grid(1, 16.0, 256) : make_grid(2, 4.0, 32);
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
      SampledField f = random_field(g, seed);
      SpectralField F = dft(f);
      SampledField back = idft(F);
      double scale = f.values.abs().maxCoeff();
      CHECK(oracle::max_abs_diff(back.values, f.values) <= 1e-10 * scale);
      double a = f.values.abs2().sum();
      double b = F.values.abs2().sum();
      CHECK(std::abs(a - b) <= 1e-12 * a);
    }
  }
}

TEST_CASE("pure lattice mode lands in its bin with weight sqrt(M)") {
  GridSpec g = make_grid(1, 16.0, 64);
  const int mode = 9;
  const double xi = M_PI * mode / g.half_width;
  SampledField f{g, 2.0, CArray(g.total_points(), 1)};
  for (long r = 0; r < g.total_points(); ++r)
    f.values(r, 0) = std::exp(Complex(0.0, xi * g.coord(int(r))));
  SpectralField F = dft(f);
  const double root_m = std::sqrt(double(g.total_points()));
  for (long b = 0; b < g.total_points(); ++b) {
    double expect = g.signed_bin(int(b)) == mode ? root_m : 0.0;
    CHECK(std::abs(F.values(b, 0) - expect) <= 1e-12 * root_m);
  }

  GridSpec g2 = make_grid(2, 4.0, 16);
  SampledField f2{g2, 2.0, CArray(g2.total_points(), 1)};
  const double xi0 = M_PI * 3 / g2.half_width, xi1 = M_PI * -5 / g2.half_width;
  for (long r = 0; r < g2.total_points(); ++r) {
    auto x = g2.point(r);
    f2.values(r, 0) = std::exp(Complex(0.0, xi0 * x[0] + xi1 * x[1]));
  }
  SpectralField F2 = dft(f2);
  const double root_m2 = std::sqrt(double(g2.total_points()));
  for (long b = 0; b < g2.total_points(); ++b) {
    auto ij = g2.axes_of(b);
    bool hit = g2.signed_bin(ij[0]) == 3 && g2.signed_bin(ij[1]) == -5;
    CHECK(std::abs(F2.values(b, 0) - (hit ? root_m2 : 0.0)) <= 1e-12 * root_m2);
  }
}

TEST_CASE("symbol multiplication differentiates a mode exactly") {
  GridSpec g = make_grid(1, 16.0, 128);
  const double xi = M_PI * 7 / g.half_width;
  SampledField f{g, 2.0, CArray(g.total_points(), 1)};
  for (long r = 0; r < g.total_points(); ++r)
    f.values(r, 0) = std::exp(Complex(0.0, xi * g.coord(int(r))));
  SampledField df = fourier_multiply(
      f, [](double x0, double) { return Complex(0.0, x0); });
  for (long r = 0; r < 16; ++r) {
    Complex expect = Complex(0.0, xi) * f.values(r * 8, 0);
    CHECK(std::abs(df.values(r * 8, 0) - expect) <= 1e-10 * std::abs(xi));
  }
  // non-finite symbol values must be rejected
  CHECK_THROWS_AS(fourier_multiply(f, [](double x0, double) {
                    return Complex(1.0 / x0, 0.0);
                  }),
                  std::invalid_argument);
}

TEST_CASE("upsample reproduces band-limited samples and adds no spectrum") {
  GridSpec g = make_grid(1, 16.0, 128);
  FamilyParams p;
  p.k_lo = 0.0;
  p.k_hi = 0.3 * g.xi_max();
  SampledField f = sample_family(FieldKind::random_bandlimited, p, g, 21);
  SampledField up = upsample(f, 4);
  CHECK(up.grid.n_per_axis == 512);
  double scale = f.values.abs().maxCoeff();
  for (int i = 0; i < g.n_per_axis; ++i)
    CHECK(std::abs(up.values(4 * i, 0) - f.values(i, 0)) <= 1e-10 * scale);
  double cap = g.xi_max();
  CHECK(out_of_band_mass(up, [cap](double axi) { return axi <= cap; }) <=
        1e-14);

  GridSpec g2 = make_grid(2, 4.0, 32);
  SampledField f2 = random_field(g2, 9);
  SampledField up2 = upsample(f2, 2);
  double scale2 = f2.values.abs().maxCoeff();
  for (int i0 = 0; i0 < 32; ++i0)
    for (int i1 = 0; i1 < 32; ++i1)
      CHECK(std::abs(up2.values(up2.grid.row_of(2 * i0, 2 * i1), 0) -
                     f2.values(g2.row_of(i0, i1), 0)) <= 1e-10 * scale2);
}

TEST_CASE("pointwise multiply broadcast rules") {
  GridSpec g = make_grid(1, 16.0, 64);
  SampledField a = random_field(g, 1, 1);
  SampledField b = random_field(g, 2, 3);
  SampledField prod = pointwise_multiply(a, b);
  REQUIRE(prod.components() == 3);
  for (int c = 0; c < 3; ++c)
    CHECK(oracle::max_abs_diff(prod.values.col(c),
                               CArray(a.values.col(0) * b.values.col(c))) ==
          0.0);

  SampledField diag = random_field(g, 3, 3);
  SampledField prod2 = pointwise_multiply(diag, b);
  for (int c = 0; c < 3; ++c)
    CHECK(oracle::max_abs_diff(prod2.values.col(c),
                               CArray(diag.values.col(c) * b.values.col(c))) ==
          0.0);

  SampledField two = random_field(g, 4, 2);
  CHECK_THROWS_AS(pointwise_multiply(two, b), std::invalid_argument);
}

TEST_CASE("families are deterministic in the seed") {
  GridSpec g = make_grid(1, 16.0, 256);
  FamilyParams p;
  p.k_lo = 0.5;
  p.k_hi = 10.0;
  SampledField a = sample_family(FieldKind::random_bandlimited, p, g, 42);
  SampledField b = sample_family(FieldKind::random_bandlimited, p, g, 42);
  CHECK(oracle::max_abs_diff(a.values, b.values) == 0.0);
  SampledField c = sample_family(FieldKind::random_bandlimited, p, g, 43);
  CHECK(oracle::max_abs_diff(a.values, c.values) > 1e-6);
}

TEST_CASE("band-limited family survives refinement unchanged") {
  // coefficients are keyed on physical mode indices, so N = 256 and N = 512
  // realize the same continuum function on their shared sample points
  FamilyParams p;
  p.k_lo = 0.5;
  p.k_hi = 10.0;
  GridSpec coarse = make_grid(1, 16.0, 256);
  GridSpec fine = make_grid(1, 16.0, 512);
  SampledField a = sample_family(FieldKind::random_bandlimited, p, coarse, 42);
  SampledField b = sample_family(FieldKind::random_bandlimited, p, fine, 42);
  double scale = a.values.abs().maxCoeff();
  for (int i = 0; i < coarse.n_per_axis; ++i)
    CHECK(std::abs(a.values(i, 0) - b.values(2 * i, 0)) <= 1e-10 * scale);
}

TEST_CASE("indicator, cutoff and concentrated families have the stated shapes") {
  GridSpec g = make_grid(1, 16.0, 256);
  FamilyParams p;
  SampledField ind = sample_family(FieldKind::indicator_halfspace, p, g);
  for (long r = 0; r < g.total_points(); ++r) {
    double expect = g.last_coord(r) >= 0.0 ? 1.0 : 0.0;
    CHECK(ind.values(r, 0) == Complex(expect, 0.0));
  }

  CHECK(smooth_cutoff_value(0.3) == 1.0);
  CHECK(smooth_cutoff_value(-1.0) == 1.0);
  CHECK(smooth_cutoff_value(2.0) == 0.0);
  CHECK(smooth_cutoff_value(2.7) == 0.0);
  double prev = 1.0;
  for (double t = 1.0; t <= 2.0; t += 0.05) {
    double v = smooth_cutoff_value(t);
    CHECK(v <= prev + 1e-15);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    prev = v;
  }

  p.scale = 0.25;
  SampledField bump = sample_family(FieldKind::concentrated_near_hyperplane, p, g);
  for (long r = 0; r < g.total_points(); r += 7) {
    double t = g.last_coord(r);
    double expect = std::exp(-t * t / (2.0 * p.scale * p.scale));
    CHECK(std::abs(bump.values(r, 0) - expect) <= 1e-12);
  }

  p.freq = 8.0;
  SampledField mod = sample_family(FieldKind::concentrated_near_hyperplane, p, g);
  for (long r = 0; r < g.total_points(); r += 7) {
    double t = g.last_coord(r);
    Complex expect = std::exp(-t * t / (2.0 * p.scale * p.scale)) *
                     std::exp(Complex(0.0, p.freq * t));
    CHECK(std::abs(mod.values(r, 0) - expect) <= 1e-12);
  }
}

TEST_CASE("extend_along_last_axis copies the profile across rows") {
  GridSpec g1 = make_grid(1, 4.0, 32);
  GridSpec g2 = make_grid(2, 4.0, 32);
  SampledField prof = random_field(g1, 17);
  SampledField ext = extend_along_last_axis(prof, g2);
  for (int i0 = 0; i0 < 32; ++i0)
    for (int i1 = 0; i1 < 32; ++i1)
      CHECK(ext.values(g2.row_of(i0, i1), 0) == prof.values(i1, 0));
}

TEST_CASE("value_norms honors r_value") {
  GridSpec g = make_grid(1, 1.0, 8);
  SampledField f{g, 2.0, CArray::Zero(8, 2)};
  f.values(0, 0) = Complex(3.0, 0.0);
  f.values(0, 1) = Complex(0.0, 4.0);
  CHECK(f.value_norms()(0) == doctest::Approx(5.0).epsilon(1e-14));
  f.r_value = std::numeric_limits<double>::infinity();
  CHECK(f.value_norms()(0) == doctest::Approx(4.0).epsilon(1e-14));
  f.r_value = 1.0;
  CHECK(f.value_norms()(0) == doctest::Approx(7.0).epsilon(1e-14));
  f.r_value = 3.0;
  CHECK(f.value_norms()(0) ==
        doctest::Approx(std::pow(27.0 + 64.0, 1.0 / 3.0)).epsilon(1e-14));
}
