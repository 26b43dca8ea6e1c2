#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "murmur/arith.hpp"
#include "murmur/dirichlet.hpp"
#include "murmur/elliptic.hpp"
#include "murmur/errors.hpp"
#include "murmur/lfunc.hpp"

namespace murmur::formula {

using Complex = std::complex<double>;

// Euler-Mascheroni constant, 20 significant digits.
inline constexpr double kEulerMascheroni = 0.57721566490153286061;

// Zero-sum truncation: keep the lowest `count` ordinates (by |gamma|) or all
// ordinates with |gamma| <= height.
struct Truncation {
  enum class Mode { ByCount, ByHeight } mode = Mode::ByHeight;
  size_t count = 0;
  double height = 0.0;

  static Truncation by_count(size_t n) { return {Mode::ByCount, n, 0.0}; }
  static Truncation by_height(double T) { return {Mode::ByHeight, 0, T}; }
  std::string describe() const;
};

// (log x / sqrt(x)) * sum_{p < x} a_p(E)/sqrt(p)
double lhs_elliptic(const ec::EllipticCurve& E, double x,
                    const std::vector<std::pair<int64_t, int>>& ap_table,
                    int64_t table_limit);

// x^{i g}/(1/2 + i g) + x^{-i g}/(1/2 - i g) in closed real form:
// [cos(g log x) + 2 g sin(g log x)] / (1/4 + g^2).
double zero_pair_term(double gamma, double x);

// sum over positive ordinates (paired with their negatives) of the selected
// zeros; real by pairing. For self-conjugate objects.
double zero_sum_paired(const lfunc::ZeroList& zeros, double x, const Truncation& trunc);

// Ordinates surviving truncation, sorted by |gamma| ascending.
std::vector<double> select_signed(std::span<const double> signed_gammas,
                                  const Truncation& trunc);

// sum of x^{i g}/(1/2 + i g) over every listed ordinate.
Complex zero_sum_all(std::span<const double> signed_gammas, double x);

// sum of x^{i g}/(1/2 + i g) over an explicit signed ordinate list.
Complex zero_sum_signed(std::span<const double> signed_gammas, double x,
                        const Truncation& trunc);

// 1 - 2 r(E) - zero_sum (the error term is intentionally excluded, so
// lhs - rhs estimates Err_E(x) plus the truncation tail).
double rhs_elliptic(const ec::EllipticCurve& E, const lfunc::ZeroList& zeros,
                    double x, const Truncation& trunc);

// (1/sqrt(x)) * sum_{p < x} chi(p) log p
Complex lhs_dirichlet(const dirichlet::DirichletCharacter& chi, double x,
                      const arith::PrimeTable& primes);

// The five components of the even-character remainder R_chi(x) and their
// signed total (divided by sqrt(x)).
struct RChiBreakdown {
  Complex log_deriv;        // L'(1, conj chi) / L(1, conj chi)
  double conductor_term;    // log(N / 2 pi)
  double euler_mascheroni;  // C0
  double trivial_zero_term; // -log sqrt(1 - x^{-2})
  Complex prime_power_sum;  // sum_{k>=2, p^k<x} chi(p^k) log p
  Complex total;            // (log_deriv + conductor_term - C0
                            //  + trivial_zero_term - prime_power_sum)/sqrt(x)
};

RChiBreakdown r_chi(const dirichlet::DirichletCharacter& chi, double x,
                    const lfunc::EvalAccuracy& acc = {});

// lhs - [ -(log x)/sqrt(x) - zero_sum + r_chi.total ]; estimates the
// zero-truncation tail for an even primitive character. x >= 2.
Complex dirichlet_residual(const dirichlet::DirichletCharacter& chi,
                           std::span<const double> signed_gammas, double x,
                           const arith::PrimeTable& primes, const Truncation& trunc,
                           const lfunc::EvalAccuracy& acc = {});

// One grid point of a formula evaluation, kept for diagnostics.
struct FormulaSideSample {
  double x = 0.0;
  Complex lhs;
  Complex zero_sum;
  Complex corrections;
  Complex residual;
};

FormulaSideSample sample_elliptic(const ec::EllipticCurve& E,
                                  const lfunc::ZeroList& zeros, double x,
                                  const std::vector<std::pair<int64_t, int>>& ap_table,
                                  int64_t table_limit, const Truncation& trunc);

} // namespace murmur::formula
