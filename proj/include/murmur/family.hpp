#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "murmur/arith.hpp"
#include "murmur/dirichlet.hpp"
#include "murmur/elliptic.hpp"
#include "murmur/errors.hpp"
#include "murmur/formula.hpp"
#include "murmur/lfunc.hpp"

namespace murmur::family {

using Complex = std::complex<double>;

enum class FamilyKind { EllipticRank0, EllipticRank1, EllipticCustom, KroneckerRange, OddModPrime };

struct EllipticFamily {
  std::string id;
  FamilyKind kind = FamilyKind::EllipticCustom;
  std::vector<ec::EllipticCurve> members;
  std::string provenance;
};

// Binned counts of positive zero ordinates; counts divided by #F when
// normalized.
struct ZeroDensityHistogram {
  std::vector<double> bin_edges;
  std::vector<double> counts;
  std::string family_id;
  bool normalized = false;
};

// Family-averaged murmuration data on a common x grid.
//   avg_lhs  (blue):  mean prime-sum side
//   avg_zero_term (gold): mean zero-side term, signed so that
//                         black = blue + gold is the small remainder
//   black:   blue + gold
struct MurmurationSeries {
  std::vector<double> x_grid;
  std::vector<Complex> avg_lhs;
  std::vector<Complex> avg_zero_term;
  std::vector<Complex> black;
  std::string family_id;
  std::string truncation;
  double mean_rank_term = 0.0; // 1 - (2/#F) sum r(E); elliptic only
};

using ZeroMap = std::map<std::string, lfunc::ZeroList>;

EllipticFamily build_elliptic_family(const std::vector<ec::EllipticCurve>& corpus,
                                     int64_t conductor_lo, int64_t conductor_hi,
                                     int rank);

dirichlet::CharacterFamily build_kronecker_family(int64_t lo, int64_t hi);

// Histogram of ordinates in (0, gamma_max] over all members named in `ids`.
ZeroDensityHistogram zero_density(const std::vector<std::string>& ids,
                                  const ZeroMap& zeros, double bin_width,
                                  double gamma_max, bool normalize,
                                  const std::string& family_id);

// Geometric grid of n points from x_min to x_max (uniform in log x).
std::vector<double> geometric_grid(size_t n, double x_min, double x_max);

MurmurationSeries murmuration_series_elliptic(const EllipticFamily& fam,
                                              const ZeroMap& zeros,
                                              const std::vector<double>& x_grid,
                                              const formula::Truncation& trunc,
                                              const arith::PrimeTable& primes);

// include_r folds the non-zero-sum RHS terms (R_chi) into the gold curve;
// even characters only. With include_r = false the gold curve is the negated
// RHS omitting R: +log x/sqrt x (even members) plus the zero sum.
MurmurationSeries murmuration_series_dirichlet(const dirichlet::CharacterFamily& fam,
                                               const ZeroMap& zeros,
                                               const std::vector<double>& x_grid,
                                               const formula::Truncation& trunc,
                                               bool include_r,
                                               const arith::PrimeTable& primes,
                                               const lfunc::EvalAccuracy& acc = {});

struct Jump {
  double location = 0.0;
  double size = 0.0;
};

// Windowed mean difference of the black curve across each candidate,
// sorted by |size| descending. Needs >= 3 grid points on each side.
std::vector<Jump> detect_jumps(const MurmurationSeries& series,
                               const std::vector<double>& candidates, double window);

// Default jump candidates: {p^2 : p prime, p^2 < x_max} plus 16.
std::vector<double> default_jump_candidates(double x_max);

// Ratio of the largest nonzero-frequency DFT magnitude of the gold curve to
// sqrt(N) times its RMS. The grid must be uniform in log x.
double structure_metric(const MurmurationSeries& series);

// Histogram-approximation of the heuristic integral (off the default path):
// sum over bins of count * zero_pair_term(bin center, x). Histogram must be
// normalized for a per-member-scale value.
double zero_sum_from_histogram(const ZeroDensityHistogram& hist, double x);

} // namespace murmur::family
