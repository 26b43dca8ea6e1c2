#include "murmur/family.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "murmur/parallel.hpp"

namespace murmur::family {

namespace {

constexpr double kPi = std::numbers::pi;

const lfunc::ZeroList& zeros_for(const ZeroMap& zeros, const std::string& id) {
  auto it = zeros.find(id);
  if (it == zeros.end())
    throw DataError("zero data missing for member '" + id + "'");
  return it->second;
}

void check_grid(const std::vector<double>& x_grid) {
  if (x_grid.empty()) throw DomainError("x grid is empty");
  for (size_t i = 0; i < x_grid.size(); ++i) {
    if (!(x_grid[i] > 1.0)) throw DomainError("x grid values must be > 1");
    if (i > 0 && !(x_grid[i] > x_grid[i - 1]))
      throw DomainError("x grid must be strictly increasing");
  }
}

} // namespace

EllipticFamily build_elliptic_family(const std::vector<ec::EllipticCurve>& corpus,
                                     int64_t conductor_lo, int64_t conductor_hi,
                                     int rank) {
  EllipticFamily fam;
  fam.kind = rank == 0   ? FamilyKind::EllipticRank0
             : rank == 1 ? FamilyKind::EllipticRank1
                         : FamilyKind::EllipticCustom;
  fam.id = "ec_N" + std::to_string(conductor_lo) + "-" + std::to_string(conductor_hi) +
           "_r" + std::to_string(rank);
  fam.provenance = "conductor in [" + std::to_string(conductor_lo) + ", " +
                   std::to_string(conductor_hi) + "], rank " + std::to_string(rank);
  for (const auto& E : corpus)
    if (E.conductor >= conductor_lo && E.conductor <= conductor_hi && E.rank == rank)
      fam.members.push_back(E);
  if (fam.members.empty())
    throw DataError("build_elliptic_family: no curves match " + fam.provenance);
  return fam;
}

dirichlet::CharacterFamily build_kronecker_family(int64_t lo, int64_t hi) {
  dirichlet::CharacterFamily fam;
  fam.id = "kronecker_" + std::to_string(lo) + "-" + std::to_string(hi);
  fam.conjugation_closed = true; // real characters are self-conjugate
  for (int64_t D : arith::list_fundamental_discriminants(lo, hi))
    fam.members.push_back(dirichlet::DirichletCharacter::kronecker(D));
  if (fam.members.empty())
    throw DataError("build_kronecker_family: no fundamental discriminants in [" +
                    std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return fam;
}

ZeroDensityHistogram zero_density(const std::vector<std::string>& ids,
                                  const ZeroMap& zeros, double bin_width,
                                  double gamma_max, bool normalize,
                                  const std::string& family_id) {
  if (!(bin_width > 0.0)) throw DomainError("zero_density: bin_width must be > 0");
  if (!(gamma_max > 0.0)) throw DomainError("zero_density: gamma_max must be > 0");
  if (ids.empty()) throw DomainError("zero_density: empty family");

  const size_t n_bins = static_cast<size_t>(std::ceil(gamma_max / bin_width - 1e-12));
  ZeroDensityHistogram hist;
  hist.family_id = family_id;
  hist.normalized = normalize;
  hist.bin_edges.resize(n_bins + 1);
  for (size_t b = 0; b <= n_bins; ++b) hist.bin_edges[b] = b * bin_width;
  hist.counts.assign(n_bins, 0.0);

  for (const auto& id : ids) {
    const auto& zl = zeros_for(zeros, id);
    if (zl.height_bound < gamma_max)
      throw DataError("zero_density: member '" + id + "' covers only height " +
                      std::to_string(zl.height_bound) + " < gamma_max");
    for (double g : zl.gammas) {
      if (g <= 0.0 || g >= gamma_max) continue;
      auto b = static_cast<size_t>(g / bin_width);
      if (b >= n_bins) b = n_bins - 1;
      hist.counts[b] += 1.0;
    }
  }
  if (normalize)
    for (double& c : hist.counts) c /= static_cast<double>(ids.size());
  return hist;
}

std::vector<double> geometric_grid(size_t n, double x_min, double x_max) {
  if (n < 2 || !(x_min > 1.0) || !(x_max > x_min))
    throw DomainError("geometric_grid: need n >= 2 and 1 < x_min < x_max");
  std::vector<double> grid(n);
  const double step = std::log(x_max / x_min) / static_cast<double>(n - 1);
  for (size_t i = 0; i < n; ++i) grid[i] = x_min * std::exp(step * static_cast<double>(i));
  grid.back() = x_max;
  return grid;
}

MurmurationSeries murmuration_series_elliptic(const EllipticFamily& fam,
                                              const ZeroMap& zeros,
                                              const std::vector<double>& x_grid,
                                              const formula::Truncation& trunc,
                                              const arith::PrimeTable& primes) {
  check_grid(x_grid);
  if (!primes.covers(x_grid.back()))
    throw BoundsError("murmuration_series_elliptic: prime table below x_max");

  const size_t n_members = fam.members.size();
  const size_t n_x = x_grid.size();
  std::vector<std::vector<double>> lhs(n_members), zsum(n_members);

  parallel_for(n_members, [&](size_t j) {
    const auto& E = fam.members[j];
    const auto& zl = zeros_for(zeros, E.label);
    auto ap_table = ec::ap_vector(E, primes.limit);

    std::vector<double> l(n_x), z(n_x);
    // incremental prime sweep: S(x) = sum_{p<x} a_p/sqrt(p)
    double S = 0.0;
    size_t ip = 0;
    for (size_t i = 0; i < n_x; ++i) {
      const double x = x_grid[i];
      while (ip < ap_table.size() && static_cast<double>(ap_table[ip].first) < x) {
        S += static_cast<double>(ap_table[ip].second) /
             std::sqrt(static_cast<double>(ap_table[ip].first));
        ++ip;
      }
      l[i] = std::log(x) / std::sqrt(x) * S;
      z[i] = formula::zero_sum_paired(zl, x, trunc);
    }
    lhs[j] = std::move(l);
    zsum[j] = std::move(z);
  });

  MurmurationSeries out;
  out.x_grid = x_grid;
  out.family_id = fam.id;
  out.truncation = trunc.describe();
  out.avg_lhs.assign(n_x, 0.0);
  out.avg_zero_term.assign(n_x, 0.0);
  out.black.assign(n_x, 0.0);

  double rank_sum = 0.0;
  for (const auto& E : fam.members) rank_sum += E.rank;
  out.mean_rank_term = 1.0 - 2.0 * rank_sum / static_cast<double>(n_members);

  for (size_t j = 0; j < n_members; ++j) // fixed member order
    for (size_t i = 0; i < n_x; ++i) {
      out.avg_lhs[i] += lhs[j][i];
      out.avg_zero_term[i] += zsum[j][i];
    }
  for (size_t i = 0; i < n_x; ++i) {
    out.avg_lhs[i] /= static_cast<double>(n_members);
    out.avg_zero_term[i] /= static_cast<double>(n_members);
    out.black[i] = out.avg_lhs[i] + out.avg_zero_term[i];
  }
  return out;
}

MurmurationSeries murmuration_series_dirichlet(const dirichlet::CharacterFamily& fam,
                                               const ZeroMap& zeros,
                                               const std::vector<double>& x_grid,
                                               const formula::Truncation& trunc,
                                               bool include_r,
                                               const arith::PrimeTable& primes,
                                               const lfunc::EvalAccuracy& acc) {
  check_grid(x_grid);
  if (fam.members.empty()) throw DataError("murmuration_series_dirichlet: empty family");
  if (!primes.covers(x_grid.back()))
    throw BoundsError("murmuration_series_dirichlet: prime table below x_max");
  if (include_r)
    for (const auto& chi : fam.members)
      if (chi.parity() != 0)
        throw DomainError("murmuration_series_dirichlet: include_r requires an "
                          "all-even family (odd member " + chi.id() + ")");

  const size_t n_members = fam.members.size();
  const size_t n_x = x_grid.size();
  std::vector<std::vector<Complex>> lhs(n_members), zterm(n_members);

  const auto ppowers = arith::prime_powers(
      static_cast<int64_t>(std::ceil(x_grid.back())) + 1);

  parallel_for(n_members, [&](size_t j) {
    const auto& chi = fam.members[j];

    // signed ordinates: own positives plus negated positives of the conjugate
    // (for a real character the conjugate is itself)
    std::vector<double> signed_gammas = zeros_for(zeros, chi.id()).gammas;
    const auto& mirror =
        chi.is_real() ? zeros_for(zeros, chi.id())
                      : zeros_for(zeros, chi.conjugate().id());
    for (double g : mirror.gammas) signed_gammas.push_back(-g);
    const std::vector<double> selected = formula::select_signed(signed_gammas, trunc);

    const bool even = chi.parity() == 0;
    Complex r_const = 0.0; // x-independent part of R_chi
    if (include_r)
      r_const = lfunc::log_derivative_at_1(chi.conjugate(), acc) +
                std::log(static_cast<double>(chi.modulus()) / (2.0 * kPi)) -
                formula::kEulerMascheroni;

    std::vector<Complex> l(n_x), z(n_x);
    Complex prime_sum = 0.0; // sum_{p<x} chi(p) log p
    Complex pp_sum = 0.0;    // sum_{k>=2, p^k<x} chi(p^k) log p
    size_t ip = 0, ipp = 0;
    const auto& plist = primes.primes;
    for (size_t i = 0; i < n_x; ++i) {
      const double x = x_grid[i];
      while (ip < plist.size() && static_cast<double>(plist[ip]) < x) {
        const Complex c = chi.value(plist[ip]);
        if (c != Complex(0.0)) prime_sum += c * std::log(static_cast<double>(plist[ip]));
        ++ip;
      }
      const double rx = 1.0 / std::sqrt(x);
      l[i] = prime_sum * rx;

      Complex gold = formula::zero_sum_all(selected, x);
      if (even) gold += std::log(x) * rx;
      if (include_r) {
        while (ipp < ppowers.size() && static_cast<double>(ppowers[ipp].value) < x) {
          const Complex c = chi.value(ppowers[ipp].value);
          if (c != Complex(0.0))
            pp_sum += c * std::log(static_cast<double>(ppowers[ipp].p));
          ++ipp;
        }
        const double tz = -std::log(std::sqrt(1.0 - 1.0 / (x * x)));
        gold -= (r_const + tz - pp_sum) * rx;
      }
      z[i] = gold;
    }
    lhs[j] = std::move(l);
    zterm[j] = std::move(z);
  });

  MurmurationSeries out;
  out.x_grid = x_grid;
  out.family_id = fam.id;
  out.truncation = trunc.describe() + (include_r ? "+R" : "");
  out.avg_lhs.assign(n_x, 0.0);
  out.avg_zero_term.assign(n_x, 0.0);
  out.black.assign(n_x, 0.0);
  for (size_t j = 0; j < n_members; ++j)
    for (size_t i = 0; i < n_x; ++i) {
      out.avg_lhs[i] += lhs[j][i];
      out.avg_zero_term[i] += zterm[j][i];
    }
  for (size_t i = 0; i < n_x; ++i) {
    out.avg_lhs[i] /= static_cast<double>(n_members);
    out.avg_zero_term[i] /= static_cast<double>(n_members);
    out.black[i] = out.avg_lhs[i] + out.avg_zero_term[i];
  }
  return out;
}

std::vector<Jump> detect_jumps(const MurmurationSeries& series,
                               const std::vector<double>& candidates, double window) {
  if (!(window > 0.0)) throw DomainError("detect_jumps: window must be > 0");
  std::vector<Jump> jumps;
  for (double c : candidates) {
    double below = 0.0, above = 0.0;
    int n_below = 0, n_above = 0;
    for (size_t i = 0; i < series.x_grid.size(); ++i) {
      const double x = series.x_grid[i];
      if (x >= c - window && x < c) {
        below += series.black[i].real();
        ++n_below;
      } else if (x > c && x <= c + window) {
        above += series.black[i].real();
        ++n_above;
      }
    }
    if (n_below < 3 || n_above < 3)
      throw NumericError("detect_jumps: fewer than 3 grid points within " +
                         std::to_string(window) + " of candidate " + std::to_string(c));
    jumps.push_back({c, above / n_above - below / n_below});
  }
  std::sort(jumps.begin(), jumps.end(),
            [](const Jump& a, const Jump& b) { return std::abs(a.size) > std::abs(b.size); });
  return jumps;
}

std::vector<double> default_jump_candidates(double x_max) {
  std::vector<double> out;
  for (int64_t p : arith::sieve_primes(static_cast<int64_t>(std::sqrt(x_max)) + 1).primes)
    if (static_cast<double>(p) * static_cast<double>(p) < x_max)
      out.push_back(static_cast<double>(p * p));
  if (x_max > 16.0 && std::find(out.begin(), out.end(), 16.0) == out.end()) {
    out.push_back(16.0);
    std::sort(out.begin(), out.end());
  }
  return out;
}

double structure_metric(const MurmurationSeries& series) {
  const size_t n = series.x_grid.size();
  if (n < 4) throw DomainError("structure_metric: series too short");
  // require uniform spacing in log x
  const double step0 = std::log(series.x_grid[1] / series.x_grid[0]);
  for (size_t i = 1; i + 1 < n; ++i) {
    const double step = std::log(series.x_grid[i + 1] / series.x_grid[i]);
    if (std::abs(step - step0) > 1e-9 * std::max(1.0, std::abs(step0)))
      throw DomainError("structure_metric: grid not uniform in log x");
  }

  double rms2 = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const Complex& v = series.avg_zero_term[i];
    if (std::abs(v.imag()) > 1e-9 * (1.0 + std::abs(v.real())))
      throw DomainError("structure_metric: gold curve is not real "
                        "(family not conjugation-closed?)");
    rms2 += v.real() * v.real();
  }
  rms2 /= static_cast<double>(n);
  if (rms2 == 0.0) return 0.0;

  double max_mag = 0.0;
  for (size_t k = 1; k <= n / 2; ++k) {
    double re = 0.0, im = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const double ang = -2.0 * kPi * static_cast<double>(k) * static_cast<double>(i) /
                         static_cast<double>(n);
      re += series.avg_zero_term[i].real() * std::cos(ang);
      im += series.avg_zero_term[i].real() * std::sin(ang);
    }
    max_mag = std::max(max_mag, std::hypot(re, im));
  }
  return max_mag / (std::sqrt(static_cast<double>(n)) * std::sqrt(rms2));
}

double zero_sum_from_histogram(const ZeroDensityHistogram& hist, double x) {
  double sum = 0.0;
  for (size_t b = 0; b < hist.counts.size(); ++b) {
    if (hist.counts[b] == 0.0) continue;
    const double center = 0.5 * (hist.bin_edges[b] + hist.bin_edges[b + 1]);
    sum += hist.counts[b] * formula::zero_pair_term(center, x);
  }
  return sum;
}

} // namespace murmur::family
