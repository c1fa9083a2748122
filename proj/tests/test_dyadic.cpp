#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lpw/dyadic.hpp"
#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

using namespace lpw;

namespace {

SampledField random_field(const GridSpec& g, std::uint64_t seed) {
  FamilyParams p;
  p.k_hi = 0.4 * g.xi_max();
  return sample_family(FieldKind::random_bandlimited, p, g, seed);
}

SampledField pure_mode(const GridSpec& g, int mode) {
  SampledField f{g, 2.0, CArray(g.total_points(), 1)};
  const double xi = M_PI * mode / g.half_width;
  for (long r = 0; r < g.total_points(); ++r)
    f.values(r, 0) = std::exp(Complex(0.0, xi * g.coord(int(r))));
  return f;
}

} // namespace

TEST_CASE("generator profile") {
  CHECK(dyadic_generator(0.0) == 1.0);
  CHECK(dyadic_generator(1.0) == 1.0);
  CHECK(dyadic_generator(1.5) == 0.0);
  CHECK(dyadic_generator(7.0) == 0.0);
  double prev = 1.0;
  for (double u = 1.0; u <= 1.5; u += 0.01) {
    double v = dyadic_generator(u);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    CHECK(v <= prev + 1e-15);
    prev = v;
  }
}

TEST_CASE("level capacity follows the lattice edge") {
  // largest K with (3/2) 2^K <= pi N / (2L)
  CHECK(max_levels(make_grid(1, 16.0, 1024)) == 6);
  CHECK(max_levels(make_grid(2, 4.0, 256)) == 6);
  CHECK(max_levels(make_grid(1, 4.0, 1024)) == 8);
  CHECK(max_levels(make_grid(1, 4.0, 512)) == 7);
  CHECK(max_levels(make_grid(1, 16.0, 256)) == 4);
  CHECK(max_levels(make_grid(1, 16.0, 512)) == 5);
  CHECK(max_levels(make_grid(1, 16.0, 2048)) == 7);
}

TEST_CASE("family construction invariants, dim 1") {
  GridSpec g = make_grid(1, 16.0, 1024);
  int K = max_levels(g);
  DyadicFamily fam = build_family(g, K);
  REQUIRE(int(fam.band.size()) == K + 1);

  for (long r = 0; r < g.total_points(); ++r) {
    double axi = g.freq_abs(r);
    double sum = 0.0;
    for (int k = 0; k <= K; ++k) {
      double v = fam.band[k](r);
      CHECK(v >= -1e-12);
      CHECK(v <= 1.0 + 1e-12);
      // support: band 0 inside |xi| <= 3/2, band k inside [2^{k-1}, 3 2^{k-1}]
      if (k == 0) {
        if (axi > 1.5 + 1e-9) CHECK(std::abs(v) <= 1e-12);
      } else {
        double lo = std::ldexp(1.0, k - 1), hi = 1.5 * std::ldexp(1.0, k);
        if (axi < lo - 1e-9 || axi > hi + 1e-9) CHECK(std::abs(v) <= 1e-12);
      }
      sum += v;
    }
    // partition of unity on |xi| <= 2^K
    if (axi <= std::ldexp(1.0, K)) CHECK(std::abs(sum - 1.0) <= 1e-12);
    CHECK(sum <= 1.0 + 1e-12);
  }

  CHECK_THROWS_AS(build_family(g, K + 1), std::invalid_argument);
  CHECK_THROWS_AS(build_family(g, -1), std::invalid_argument);
}

TEST_CASE("family construction invariants, dim 2") {
  GridSpec g = make_grid(2, 4.0, 64);
  int K = max_levels(g);
  DyadicFamily fam = build_family(g, K);
  for (long r = 0; r < g.total_points(); ++r) {
    double axi = g.freq_abs(r);
    double sum = 0.0;
    for (int k = 0; k <= K; ++k) sum += fam.band[k](r);
    if (axi <= std::ldexp(1.0, K)) CHECK(std::abs(sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("blocks and partial sums are consistent") {
  GridSpec g = make_grid(1, 16.0, 512);
  DyadicFamily fam = build_family(g, max_levels(g));
  SampledField f = random_field(g, 3);
  double scale = f.values.abs().maxCoeff();

  SampledField acc = partial(fam, -1, f);
  CHECK(acc.values.abs().maxCoeff() == 0.0);
  for (int l = 0; l <= fam.levels; ++l) {
    SampledField p = partial(fam, l, f);
    SampledField b = block(fam, l, f);
    CHECK(oracle::max_abs_diff(p.values, CArray(acc.values + b.values)) <=
          1e-12 * scale);
    acc = p;
  }

  auto blocks = all_blocks(fam, f);
  REQUIRE(int(blocks.size()) == fam.levels + 1);
  for (int k = 0; k <= fam.levels; ++k)
    CHECK(oracle::max_abs_diff(blocks[k].values, block(fam, k, f).values) <=
          1e-13 * scale);

  CHECK_THROWS_AS(block(fam, fam.levels + 1, f), std::invalid_argument);
}

TEST_CASE("a field inside the partition band is reproduced") {
  GridSpec g = make_grid(1, 16.0, 512);
  int K = max_levels(g); // 5, top of partition at 2^5 = 32 < xi_max
  DyadicFamily fam = build_family(g, K);
  FamilyParams p;
  p.k_hi = std::ldexp(1.0, K) * 0.95;
  SampledField f = sample_family(FieldKind::random_bandlimited, p, g, 8);
  SampledField sum = partial(fam, K, f);
  CHECK(oracle::max_abs_diff(sum.values, f.values) <=
        1e-12 * f.values.abs().maxCoeff());
}

TEST_CASE("a pure mode in a band interior is captured by that band alone") {
  GridSpec g = make_grid(1, 16.0, 1024);
  DyadicFamily fam = build_family(g, max_levels(g));
  // |xi| = 0.9 * 2^k sits where g(2^-k xi) = 1 and g(2^-k+1 xi) = 0
  const int k = 4;
  const double target = 0.9 * std::ldexp(1.0, k);
  const int mode = int(std::lround(target * g.half_width / M_PI));
  double xi = M_PI * mode / g.half_width;
  REQUIRE(xi >= 0.75 * std::ldexp(1.0, k));
  REQUIRE(xi <= std::ldexp(1.0, k));
  SampledField f = pure_mode(g, mode);
  for (int j = 0; j <= fam.levels; ++j) {
    SampledField b = block(fam, j, f);
    double mass = b.values.abs().maxCoeff();
    if (j == k)
      CHECK(oracle::max_abs_diff(b.values, f.values) <= 1e-12);
    else
      CHECK(mass <= 1e-12);
  }
}

TEST_CASE("blocks carry no mass outside their annulus") {
  GridSpec g = make_grid(1, 16.0, 512);
  DyadicFamily fam = build_family(g, max_levels(g));
  SampledField f = random_field(g, 12);
  for (int k = 0; k <= fam.levels; ++k) {
    SampledField b = block(fam, k, f);
    double lo = k == 0 ? 0.0 : std::ldexp(1.0, k - 1);
    double hi = 1.5 * std::ldexp(1.0, k);
    double out = out_of_band_mass(
        b, [lo, hi](double axi) { return axi >= lo - 1e-9 && axi <= hi + 1e-9; });
    CHECK(out <= 1e-14);
  }
}

TEST_CASE("out_of_band_mass sees planted leakage") {
  GridSpec g = make_grid(1, 16.0, 256);
  SampledField f = pure_mode(g, 40); // xi = 2.5 pi
  double xi = M_PI * 40 / g.half_width;
  CHECK(out_of_band_mass(f, [xi](double a) { return a <= xi + 1e-9; }) <=
        1e-14);
  CHECK(out_of_band_mass(f, [xi](double a) { return a <= 0.5 * xi; }) ==
        doctest::Approx(1.0).epsilon(1e-12));
  SampledField z = zero_field(g);
  CHECK(out_of_band_mass(z, [](double) { return false; }) == 0.0);
}
