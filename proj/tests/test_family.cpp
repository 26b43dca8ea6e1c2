#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>

#include "murmur/family.hpp"

using namespace murmur;
using dirichlet::DirichletCharacter;
using formula::Truncation;
using Complex = std::complex<double>;

namespace {

const ec::EllipticCurve k11a1{"11a1", 0, -1, 1, -10, -20, 11, 0};
const ec::EllipticCurve k37b1{"37b1", 0, 1, 1, -23, -50, 37, 0};
const ec::EllipticCurve k389a1{"389a1", 0, 1, 1, -2, 0, 389, 2};

lfunc::ZeroList make_zeros(const std::string& id, std::vector<double> gammas,
                           double height) {
  lfunc::ZeroList zl;
  zl.object_id = id;
  zl.gammas = std::move(gammas);
  zl.height_bound = height;
  return zl;
}

} // namespace

TEST_CASE("build_elliptic_family filter semantics") {
  std::vector<ec::EllipticCurve> corpus = {k11a1, k37b1, k389a1};
  auto fam = family::build_elliptic_family(corpus, 10, 40, 0);
  REQUIRE(fam.members.size() == 2);
  CHECK(fam.members[0].label == "11a1");
  CHECK(fam.members[1].label == "37b1");
  CHECK_THROWS_AS(family::build_elliptic_family(corpus, 10, 40, 3), DataError);
}

TEST_CASE("build_kronecker_family") {
  CHECK(family::build_kronecker_family(1, 30).members.size() == 9);
  CHECK_THROWS_AS(family::build_kronecker_family(6, 7), DataError);
  CHECK(family::build_kronecker_family(9000, 10000).members.size() == 307);
}

TEST_CASE("zero_density basics") {
  family::ZeroMap zeros;
  zeros["a"] = make_zeros("a", {1.0, 2.5}, 10.0);

  auto hist = family::zero_density({"a"}, zeros, 1.0, 3.0, false, "toy");
  REQUIRE(hist.counts.size() == 3);
  CHECK(hist.counts[0] == 0.0);
  CHECK(hist.counts[1] == 1.0);
  CHECK(hist.counts[2] == 1.0);

  zeros["b"] = make_zeros("b", {0.5, 1.5, 2.25}, 10.0);
  auto norm = family::zero_density({"a", "b"}, zeros, 0.5, 3.0, true, "toy");
  double total = 0.0;
  for (double c : norm.counts) total += c;
  CHECK(total == doctest::Approx(5.0 / 2.0).epsilon(1e-12));

  // missing coverage errors name the offender
  zeros["c"] = make_zeros("c", {0.75}, 2.0);
  CHECK_THROWS_WITH_AS(family::zero_density({"c"}, zeros, 1.0, 3.0, false, "toy"),
                       doctest::Contains("'c'"), DataError);
  CHECK_THROWS_AS(family::zero_density({"missing"}, zeros, 1.0, 3.0, false, "toy"),
                  DataError);

  // shrinking bins isolate the exact multiset
  auto fine = family::zero_density({"a"}, zeros, 1e-4, 3.0, false, "toy");
  int occupied = 0;
  for (double c : fine.counts) {
    CHECK(c <= 1.0);
    if (c > 0.0) ++occupied;
  }
  CHECK(occupied == 2);
}

TEST_CASE("murmuration_series_elliptic degenerate family") {
  family::EllipticFamily fam;
  fam.id = "one";
  fam.members = {k11a1};
  family::ZeroMap zeros;
  zeros["11a1"] = make_zeros("11a1", {}, 100.0);

  auto primes = arith::sieve_primes(128);
  auto grid = family::geometric_grid(64, 2.0, 100.0);
  auto series =
      family::murmuration_series_elliptic(fam, zeros, grid, Truncation::by_height(50.0), primes);

  for (size_t i = 0; i < grid.size(); ++i) {
    CHECK(series.avg_zero_term[i] == Complex(0.0));
    CHECK(series.black[i] == series.avg_lhs[i]);
  }
  CHECK(series.mean_rank_term == 1.0);
}

TEST_CASE("heuristic consistency: averaging commutes with residuals") {
  // seeded synthetic families; the identity is algebraic
  uint64_t state = 77;
  auto uniform = [&] { return double(dirichlet::splitmix64(state) >> 11) * 0x1p-53; };

  for (int trial = 0; trial < 5; ++trial) {
    std::vector<ec::EllipticCurve> corpus = {k11a1, k37b1, k389a1};
    family::EllipticFamily fam;
    fam.id = "rand";
    family::ZeroMap zeros;
    for (auto& E : corpus) {
      E.rank = int(dirichlet::splitmix64(state) % 3);
      std::vector<double> g;
      double cur = 0.5 + 2.0 * uniform();
      const int n = 1 + int(dirichlet::splitmix64(state) % 6);
      for (int i = 0; i < n; ++i) {
        g.push_back(cur);
        cur += 0.5 + 3.0 * uniform();
      }
      zeros[E.label] = make_zeros(E.label, g, 100.0);
      fam.members.push_back(E);
    }

    auto primes = arith::sieve_primes(256);
    auto grid = family::geometric_grid(32, 2.0, 200.0);
    const auto trunc = Truncation::by_height(100.0);
    auto series = family::murmuration_series_elliptic(fam, zeros, grid, trunc, primes);

    for (size_t i = 0; i < grid.size(); ++i) {
      Complex mean_resid = 0.0;
      for (const auto& E : fam.members) {
        auto ap = ec::ap_vector(E, 256);
        const auto s = formula::sample_elliptic(E, zeros[E.label], grid[i], ap, 256, trunc);
        mean_resid += s.residual;
      }
      mean_resid /= double(fam.members.size());
      const Complex lhs_identity =
          series.avg_lhs[i] + series.avg_zero_term[i] - series.mean_rank_term;
      CHECK(std::abs(lhs_identity - mean_resid) < 1e-12);
    }
  }
}

TEST_CASE("linearity: union series is the member-weighted mean") {
  std::vector<ec::EllipticCurve> a = {k11a1}, b = {k37b1, k389a1};
  family::ZeroMap zeros;
  zeros["11a1"] = make_zeros("11a1", {6.3, 8.6}, 50.0);
  zeros["37b1"] = make_zeros("37b1", {4.9, 6.9, 8.2}, 50.0);
  zeros["389a1"] = make_zeros("389a1", {2.8}, 50.0);

  family::EllipticFamily fa{"a", family::FamilyKind::EllipticCustom, a, ""};
  family::EllipticFamily fb{"b", family::FamilyKind::EllipticCustom, b, ""};
  family::EllipticFamily fab{"ab", family::FamilyKind::EllipticCustom, {k11a1, k37b1, k389a1}, ""};

  auto primes = arith::sieve_primes(128);
  auto grid = family::geometric_grid(16, 2.0, 100.0);
  const auto trunc = Truncation::by_height(50.0);
  auto sa = family::murmuration_series_elliptic(fa, zeros, grid, trunc, primes);
  auto sb = family::murmuration_series_elliptic(fb, zeros, grid, trunc, primes);
  auto sab = family::murmuration_series_elliptic(fab, zeros, grid, trunc, primes);

  for (size_t i = 0; i < grid.size(); ++i) {
    const Complex blue = (1.0 * sa.avg_lhs[i] + 2.0 * sb.avg_lhs[i]) / 3.0;
    const Complex gold = (1.0 * sa.avg_zero_term[i] + 2.0 * sb.avg_zero_term[i]) / 3.0;
    CHECK(std::abs(blue - sab.avg_lhs[i]) < 1e-12);
    CHECK(std::abs(gold - sab.avg_zero_term[i]) < 1e-12);
  }
}

TEST_CASE("determinism: removing and re-adding a member is bit-identical") {
  family::EllipticFamily fam{"f", family::FamilyKind::EllipticCustom, {k11a1, k37b1}, ""};
  family::ZeroMap zeros;
  zeros["11a1"] = make_zeros("11a1", {6.3, 8.6}, 50.0);
  zeros["37b1"] = make_zeros("37b1", {4.9, 6.9}, 50.0);

  auto primes = arith::sieve_primes(64);
  auto grid = family::geometric_grid(12, 2.0, 50.0);
  auto s1 = family::murmuration_series_elliptic(fam, zeros, grid,
                                                Truncation::by_count(500), primes);
  family::EllipticFamily fam2 = fam;
  fam2.members.pop_back();
  fam2.members.push_back(k37b1);
  auto s2 = family::murmuration_series_elliptic(fam2, zeros, grid,
                                                Truncation::by_count(500), primes);
  for (size_t i = 0; i < grid.size(); ++i) {
    CHECK(s1.black[i] == s2.black[i]);
    CHECK(s1.avg_lhs[i] == s2.avg_lhs[i]);
  }
}

TEST_CASE("murmuration_series_dirichlet conventions") {
  // conjugation-closed complex pair: series must be real
  auto fam = dirichlet::build_odd_family(7, 2, 9);
  family::ZeroMap zeros;
  // synthetic (asymmetric) ordinates for the pair
  zeros[fam.members[0].id()] = make_zeros(fam.members[0].id(), {2.1, 5.3}, 50.0);
  zeros[fam.members[1].id()] = make_zeros(fam.members[1].id(), {3.4, 6.1}, 50.0);

  auto primes = arith::sieve_primes(128);
  auto grid = family::geometric_grid(24, 2.0, 100.0);
  auto series = family::murmuration_series_dirichlet(fam, zeros, grid,
                                                     Truncation::by_height(50.0), false,
                                                     primes);
  for (size_t i = 0; i < grid.size(); ++i)
    CHECK(std::abs(series.black[i].imag()) <=
          1e-9 * (1.0 + std::abs(series.black[i].real())));

  // include_r on an odd family is a parity error
  CHECK_THROWS_AS(family::murmuration_series_dirichlet(
                      fam, zeros, grid, Truncation::by_height(50.0), true, primes),
                  DomainError);
}

TEST_CASE("detect_jumps on a synthetic step") {
  family::MurmurationSeries s;
  for (double x = 2.0; x <= 20.0; x += 0.05) {
    s.x_grid.push_back(x);
    const double v = x > 9.0 ? 1.0 : 0.0;
    s.black.push_back(v);
    s.avg_lhs.push_back(v);
    s.avg_zero_term.push_back(0.0);
  }
  auto jumps = family::detect_jumps(s, {4.0, 9.0, 14.0}, 0.5);
  REQUIRE(jumps.size() == 3);
  CHECK(jumps[0].location == 9.0);
  CHECK(jumps[0].size == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(jumps[1].size) < 1e-12);
  CHECK(std::abs(jumps[2].size) < 1e-12);

  CHECK_THROWS_AS(family::detect_jumps(s, {2.05}, 0.5), NumericError);

  auto cands = family::default_jump_candidates(100.0);
  CHECK(cands == std::vector<double>{4.0, 9.0, 16.0, 25.0, 49.0});
}

TEST_CASE("structure_metric closed forms") {
  const size_t n = 512;
  family::MurmurationSeries sin_series;
  sin_series.x_grid = family::geometric_grid(n, 2.0, 500.0);
  for (size_t i = 0; i < n; ++i) {
    const double v = std::sin(2.0 * std::numbers::pi * 37.0 * double(i) / double(n));
    sin_series.avg_zero_term.push_back(v);
    sin_series.avg_lhs.push_back(0.0);
    sin_series.black.push_back(v);
  }
  CHECK(family::structure_metric(sin_series) ==
        doctest::Approx(std::sqrt(double(n) / 2.0)).epsilon(1e-9));

  // white noise scores far below a pure tone
  family::MurmurationSeries noise = sin_series;
  uint64_t state = 4242;
  for (size_t i = 0; i < n; ++i)
    noise.avg_zero_term[i] =
        2.0 * (double(dirichlet::splitmix64(state) >> 11) * 0x1p-53) - 1.0;
  CHECK(family::structure_metric(noise) < family::structure_metric(sin_series) / 3.0);

  // constant series degenerates to 0
  family::MurmurationSeries flat = sin_series;
  for (size_t i = 0; i < n; ++i) flat.avg_zero_term[i] = 0.7;
  CHECK(family::structure_metric(flat) == doctest::Approx(0.0).epsilon(1e-9));

  // non-geometric grids are rejected
  family::MurmurationSeries bad = sin_series;
  bad.x_grid[5] += 0.1;
  CHECK_THROWS_AS(family::structure_metric(bad), DomainError);
}

TEST_CASE("zero_sum_from_histogram approaches the exact sum") {
  family::ZeroMap zeros;
  zeros["a"] = make_zeros("a", {1.7, 4.25, 9.5}, 20.0);
  auto hist = family::zero_density({"a"}, zeros, 1e-6, 15.0, true, "toy");
  const double x = 35.0;
  double exact = 0.0;
  for (double g : zeros["a"].gammas) exact += formula::zero_pair_term(g, x);
  CHECK(family::zero_sum_from_histogram(hist, x) == doctest::Approx(exact).epsilon(1e-6));
}
