#pragma once

#include "lpw/dyadic.hpp"
#include "lpw/weights.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

// Smoothness-space norms built on the dyadic decomposition: Besov and
// Triebel-Lizorkin ladders, Bessel-potential and Sobolev norms, the
// difference-quotient characterization, a randomized square-function norm,
// Holder norms, and norms on banded sequences of fields. All of them reduce
// through the weighted L^p machinery in weights.hpp.

namespace lpw {

enum class SpaceKind { Lp, Besov, TriebelLizorkin, Bessel, Sobolev, MixedLp };

// Parameter bundle for a function space on the grid. Unused members are
// ignored by the dispatcher (e.g. q for Bessel). q may be infinity.
struct SpaceSpec {
  SpaceKind kind = SpaceKind::Lp;
  double s = 0.0;     // smoothness
  double p = 2.0;     // outer integrability, in (1, inf)
  double q = 2.0;     // fine index, in [1, inf]
  double gamma = 0.0; // power-weight exponent on the last coordinate
  int m = 0;          // Sobolev order
  double r = 2.0;     // inner exponent of the mixed norm

  std::string label() const;
};

// ell^q combination of nonnegative entries, sup when q = inf
double lq_combine(const std::vector<double>& entries, double q);

// || (2^{sk} S_k f)_k ||_{ell^q(L^p(w))}
double besov_norm(const SampledField& f, const DyadicFamily& fam, double s,
                  double p, double q, const PowerWeight& w);

// || (2^{sk} S_k f)_k ||_{L^p(w; ell^q)}  (ell^q taken pointwise first)
double tl_norm(const SampledField& f, const DyadicFamily& fam, double s,
               double p, double q, const PowerWeight& w);

// || (1 + |xi|^2)^{s/2} f-hat, inverse-transformed ||_{L^p(w)}
double bessel_norm(const SampledField& f, double s, double p,
                   const PowerWeight& w);

// ( sum_{|alpha| <= m} || D^alpha f ||_{L^p(w)}^p )^{1/p}, spectral derivatives
double sobolev_norm(const SampledField& f, int m, double p, const PowerWeight& w);

// m-th order periodic difference along the lattice offset (off0, off1),
// taken in grid steps; off1 ignored when dim == 1.
SampledField finite_difference(const SampledField& f, int m, int off0, int off1 = 0);

// omega^m(f, t)_p = sup over lattice offsets |h| <= t of || Delta_h^m f ||_{L^p(w)}
double modulus_of_smoothness(const SampledField& f, int m, double p,
                             const PowerWeight& w, double t);

// Difference characterization of the Besov norm: L^p(w) norm of f plus the
// ell^q (over dyadic scales t_j = 2L 2^{-j}, weight ln 2) of
//   t_j^{-s} || t_j^{-d} sum_{|h| <= t_j} |Delta_h^m f| h_grid^d ||_{L^p(w)}.
// Requires 0 < s < m.
double difference_besov_norm(const SampledField& f, double s, double p,
                             double q, const PowerWeight& w, int m);

struct RandomizedMode {
  bool exact_p2 = false; // square-function identity, valid only at p = 2
  int samples = 1024;
  std::uint64_t seed = 7;

  static RandomizedMode exact() { return {true, 0, 0}; }
  static RandomizedMode monte_carlo(int m, std::uint64_t seed) {
    return {false, m, seed};
  }
};

// || sum_k eps_k 2^{sk} S_k f ||_{L^p(signs; L^p(w))} over random signs.
// monte_carlo averages over per-sample counter-seeded sign vectors;
// exact_p2 evaluates the p = 2 identity E|sum eps_k a_k|^2 = sum |a_k|^2.
double randomized_norm(const SampledField& f, const DyadicFamily& fam, double s,
                       double p, const PowerWeight& w, const RandomizedMode& mode);

// sum_{|alpha| <= m} || D^alpha f ||_{Bessel(s - m, p, w)}
double derivative_norm(const SampledField& f, double s, double p,
                       const PowerWeight& w, int m);

// Grid BC^sigma norm: sup norms of spectral derivatives up to floor(sigma)
// plus, for fractional sigma, the lattice Holder quotient of order
// sigma - floor(sigma) of the top derivatives. dim == 2 restricts quotient
// offsets to signed powers of two per axis to keep the pair count sane.
double holder_norm(const SampledField& f, double sigma);

// Dispatch on spec.kind; the weight |t|^{spec.gamma} is built on f's grid.
double space_norm(const SampledField& f, const DyadicFamily& fam,
                  const SpaceSpec& spec);

// A finite sequence (f_k)_{k=0..K} with declared spectral support
//   one-sided:  supp f_k-hat in { |xi| <= A 2^k }
//   annular:    additionally |xi| >= 2^k / A for k >= 1
struct BandedSequence {
  double band_constant = 2.0; // A
  bool annular = false;
  std::vector<SampledField> member;
};

// Verifies the declared support spectrally (relative out-of-band mass
// <= 1e-12 per member) and that all members share one grid. Throws on
// violation.
BandedSequence make_banded(std::vector<SampledField> member, double band_constant,
                           bool annular);

enum class SeqOrder {
  Lp_outer, // || (2^{sk} f_k)_k ||_{L^p(w; ell^q)}
  lq_outer, // || (2^{sk} f_k)_k ||_{ell^q(L^p(w))}
  mixed,    // ell^q over k of 2^{sk} || f_k ||_{L^p(x'; L^r(t, w))}
};

double seq_norm(const BandedSequence& seq, double s, double p, double q,
                const PowerWeight& w, SeqOrder order, double r = 2.0);

struct EmbeddingRow {
  SpaceSpec source;
  SpaceSpec target;
  double source_norm = 0.0;
  double target_norm = 0.0;
  double ratio = 0.0;   // target / source
  bool exact_pair = false; // q-monotone same-family pair; ratio <= 1 by construction
};

// Norm ratios for a list of (source, target) space pairs on one field.
std::vector<EmbeddingRow> embedding_report(
    const SampledField& f, const DyadicFamily& fam,
    const std::vector<std::pair<SpaceSpec, SpaceSpec>>& pairs);

} // namespace lpw
