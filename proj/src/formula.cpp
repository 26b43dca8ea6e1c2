#include "murmur/formula.hpp"

#include <algorithm>
#include <cmath>

namespace murmur::formula {

std::string Truncation::describe() const {
  if (mode == Mode::ByCount) return "count:" + std::to_string(count);
  char buf[32];
  std::snprintf(buf, sizeof buf, "height:%g", height);
  return buf;
}

double lhs_elliptic(const ec::EllipticCurve& E, double x,
                    const std::vector<std::pair<int64_t, int>>& ap_table,
                    int64_t table_limit) {
  if (!(x > 1.0)) throw DomainError("lhs_elliptic: x must be > 1");
  if (static_cast<double>(table_limit) < x)
    throw BoundsError("lhs_elliptic: ap table (limit " + std::to_string(table_limit) +
                      ") does not cover x for curve " + E.label);
  double sum = 0.0;
  for (const auto& [p, a] : ap_table) {
    if (static_cast<double>(p) >= x) break;
    sum += static_cast<double>(a) / std::sqrt(static_cast<double>(p));
  }
  return std::log(x) / std::sqrt(x) * sum;
}

double zero_pair_term(double gamma, double x) {
  if (!(gamma > 0.0)) throw DomainError("zero_pair_term: gamma must be > 0");
  if (!(x >= 1.0)) throw DomainError("zero_pair_term: x must be >= 1");
  const double u = gamma * std::log(x);
  return (std::cos(u) + 2.0 * gamma * std::sin(u)) / (0.25 + gamma * gamma);
}

namespace {

size_t selected_prefix(const std::vector<double>& gammas, const Truncation& trunc) {
  // gammas ascending and positive, so both truncation modes are prefixes
  if (trunc.mode == Truncation::Mode::ByCount)
    return std::min(gammas.size(), trunc.count);
  return static_cast<size_t>(
      std::upper_bound(gammas.begin(), gammas.end(), trunc.height) - gammas.begin());
}

} // namespace

double zero_sum_paired(const lfunc::ZeroList& zeros, double x, const Truncation& trunc) {
  if (!(x > 1.0)) throw DomainError("zero_sum_paired: x must be > 1");
  const size_t n = selected_prefix(zeros.gammas, trunc);
  double sum = 0.0;
  for (size_t i = 0; i < n; ++i) sum += zero_pair_term(zeros.gammas[i], x);
  return sum;
}

std::vector<double> select_signed(std::span<const double> signed_gammas,
                                  const Truncation& trunc) {
  // ByCount keeps the `count` lowest |gamma| from each sign side, matching
  // "the N lowest-lying zeros with positive imaginary part and their
  // negatives" for self-conjugate objects.
  std::vector<double> pos, neg;
  for (double g : signed_gammas) (g >= 0.0 ? pos : neg).push_back(g);
  std::sort(pos.begin(), pos.end());
  std::sort(neg.begin(), neg.end(), std::greater<>());

  auto cut = [&](std::vector<double>& v) {
    if (trunc.mode == Truncation::Mode::ByCount) {
      if (v.size() > trunc.count) v.resize(trunc.count);
    } else {
      size_t n = 0;
      while (n < v.size() && std::abs(v[n]) <= trunc.height) ++n;
      v.resize(n);
    }
  };
  cut(pos);
  cut(neg);

  std::vector<double> sel;
  sel.reserve(pos.size() + neg.size());
  size_t i = 0, j = 0;
  while (i < pos.size() || j < neg.size()) {
    if (j >= neg.size() || (i < pos.size() && pos[i] <= std::abs(neg[j])))
      sel.push_back(pos[i++]);
    else
      sel.push_back(neg[j++]);
  }
  return sel;
}

Complex zero_sum_all(std::span<const double> signed_gammas, double x) {
  if (!(x > 1.0)) throw DomainError("zero_sum_all: x must be > 1");
  const double u = std::log(x);
  Complex sum = 0.0;
  for (double g : signed_gammas)
    sum += Complex{std::cos(g * u), std::sin(g * u)} / Complex{0.5, g};
  return sum;
}

Complex zero_sum_signed(std::span<const double> signed_gammas, double x,
                        const Truncation& trunc) {
  return zero_sum_all(select_signed(signed_gammas, trunc), x);
}

double rhs_elliptic(const ec::EllipticCurve& E, const lfunc::ZeroList& zeros,
                    double x, const Truncation& trunc) {
  if (zeros.object_id != E.label)
    throw DataError("rhs_elliptic: zero list for '" + zeros.object_id +
                    "' wired to curve '" + E.label + "'");
  return 1.0 - 2.0 * E.rank - zero_sum_paired(zeros, x, trunc);
}

Complex lhs_dirichlet(const dirichlet::DirichletCharacter& chi, double x,
                      const arith::PrimeTable& primes) {
  if (!(x > 1.0)) throw DomainError("lhs_dirichlet: x must be > 1");
  if (!primes.covers(x))
    throw BoundsError("lhs_dirichlet: prime table limit " +
                      std::to_string(primes.limit) + " below x");
  Complex sum = 0.0;
  for (int64_t p : primes.primes) {
    if (static_cast<double>(p) >= x) break;
    const Complex c = chi.value(p);
    if (c != Complex(0.0)) sum += c * std::log(static_cast<double>(p));
  }
  return sum / std::sqrt(x);
}

RChiBreakdown r_chi(const dirichlet::DirichletCharacter& chi, double x,
                    const lfunc::EvalAccuracy& acc) {
  if (chi.parity() != 0)
    throw DomainError("r_chi: stated for even characters only (odd analogue "
                      "not provided)");
  if (!(x > 1.0)) throw DomainError("r_chi: x must be > 1");

  RChiBreakdown out;
  out.log_deriv = lfunc::log_derivative_at_1(chi.conjugate(), acc);
  out.conductor_term =
      std::log(static_cast<double>(chi.modulus()) / (2.0 * std::numbers::pi));
  out.euler_mascheroni = kEulerMascheroni;
  out.trivial_zero_term = -std::log(std::sqrt(1.0 - 1.0 / (x * x)));

  Complex pps = 0.0;
  for (const auto& pk : arith::prime_powers(static_cast<int64_t>(std::ceil(x)))) {
    if (static_cast<double>(pk.value) >= x) break;
    const Complex c = chi.value(pk.value);
    if (c != Complex(0.0)) pps += c * std::log(static_cast<double>(pk.p));
  }
  out.prime_power_sum = pps;

  out.total = (out.log_deriv + out.conductor_term - out.euler_mascheroni +
               out.trivial_zero_term - out.prime_power_sum) /
              std::sqrt(x);
  return out;
}

Complex dirichlet_residual(const dirichlet::DirichletCharacter& chi,
                           std::span<const double> signed_gammas, double x,
                           const arith::PrimeTable& primes, const Truncation& trunc,
                           const lfunc::EvalAccuracy& acc) {
  if (!(x >= 2.0)) throw DomainError("dirichlet_residual: x must be >= 2");
  const Complex lhs = lhs_dirichlet(chi, x, primes);
  const Complex zsum = zero_sum_signed(signed_gammas, x, trunc);
  const RChiBreakdown r = r_chi(chi, x, acc);
  const Complex rhs = -std::log(x) / std::sqrt(x) - zsum + r.total;
  return lhs - rhs;
}

FormulaSideSample sample_elliptic(const ec::EllipticCurve& E,
                                  const lfunc::ZeroList& zeros, double x,
                                  const std::vector<std::pair<int64_t, int>>& ap_table,
                                  int64_t table_limit, const Truncation& trunc) {
  FormulaSideSample s;
  s.x = x;
  s.lhs = lhs_elliptic(E, x, ap_table, table_limit);
  s.zero_sum = zero_sum_paired(zeros, x, trunc);
  s.corrections = 1.0 - 2.0 * E.rank;
  s.residual = s.lhs - (s.corrections - s.zero_sum);
  return s;
}

} // namespace murmur::formula
