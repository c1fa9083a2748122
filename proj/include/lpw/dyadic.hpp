#pragma once

#include "lpw/grid.hpp"

#include <vector>

// Smooth dyadic frequency decomposition. The generator g(u) equals 1 for
// u <= 1 and 0 for u >= 3/2 with a C^inf bridge; band k >= 1 is
// g(2^-k |xi|) - g(2^-k+1 |xi|), supported in 2^{k-1} <= |xi| <= (3/2) 2^k,
// and band 0 is the low-pass g(|xi|). The bands telescope to a partition of
// unity on |xi| <= 2^K.

namespace lpw {

// generator profile g(u)
double dyadic_generator(double u);

struct DyadicFamily {
  GridSpec grid;
  int levels = 0;                      // K
  std::vector<Eigen::ArrayXd> band;    // band[k] on the frequency lattice, k = 0..K
};

// Largest K with (3/2) 2^K <= xi_max, i.e. every band fits the lattice.
int max_levels(const GridSpec& grid);

// Build bands 0..levels. Throws if levels exceeds max_levels(grid) or is
// negative. Construction-time sanity checks (range, support, telescoping)
// run at tolerance 1e-12.
DyadicFamily build_family(const GridSpec& grid, int levels);

// S_k f: band-limited block k of f.
SampledField block(const DyadicFamily& fam, int k, const SampledField& f);

// S^l f = sum_{k<=l} S_k f, computed spectrally as g(2^-l |xi|) f-hat.
// l < 0 gives the zero field; l may not exceed fam.levels.
SampledField partial(const DyadicFamily& fam, int l, const SampledField& f);

// all blocks S_0 f .. S_K f with a single forward transform
std::vector<SampledField> all_blocks(const DyadicFamily& fam, const SampledField& f);

// relative spectral mass of f outside the region predicate (by |xi|)
double out_of_band_mass(const SampledField& f,
                        const std::function<bool(double)>& inside);

} // namespace lpw
