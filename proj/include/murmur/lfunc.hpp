#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "murmur/dirichlet.hpp"
#include "murmur/errors.hpp"

namespace murmur::lfunc {

using Complex = std::complex<double>;

// Accuracy knobs for the Euler-Maclaurin continuation.
struct EvalAccuracy {
  double abs_tol = 1e-9; // target absolute error of L-values
  int em_terms = 12;     // Bernoulli correction depth
  int shift_terms = 50;  // directly summed terms; raised to 2|Im s| at call time
};

enum class ZeroSource { Computed, Ingested };

// Strictly increasing positive ordinates of nontrivial zeros, up to
// height_bound.
struct ZeroList {
  std::string object_id;
  std::vector<double> gammas;
  double height_bound = 0.0;
  ZeroSource source = ZeroSource::Ingested;
};

// Width of the final bisection bracket around each computed zero.
inline constexpr double kZeroTolerance = 1e-6;

// Hurwitz zeta ctz(s, a) = sum_{n>=0} (n+a)^{-s}, continued by
// Euler-Maclaurin. Requires s != 1, a in (0, 1], |Im s| <= 500.
Complex hurwitz_zeta(Complex s, double a, const EvalAccuracy& acc = {});

// L(s, chi) = q^{-s} sum_a chi(a) ctz(s, a/q) for nontrivial chi; the a-sum
// and the shifted direct sums are fused into one truncated L-series plus
// per-residue tails. Regular at s = 1 (pole terms cancel exactly).
Complex dirichlet_l(Complex s, const dirichlet::DirichletCharacter& chi,
                    const EvalAccuracy& acc = {});

// log gamma on the right half plane (Lanczos); exposed for tests.
Complex lgamma_complex(Complex z);

// Precomputed critical-line evaluator for one character: log tables for the
// truncated L-series and the unit phase making Z(t) real. Evaluations are
// const and safe to share across threads.
class LineEvaluator {
public:
  // t_max bounds the |Im s| this evaluator will be asked for.
  LineEvaluator(const dirichlet::DirichletCharacter& chi, double t_max,
                const EvalAccuracy& acc = {});

  double hardy_z(double t) const;
  Complex l_value(double t) const; // L(1/2 + it, chi)
  const dirichlet::DirichletCharacter& character() const { return chi_; }
  Complex root_number() const { return epsilon_; }

private:
  Complex line_phase(double t) const;

  dirichlet::DirichletCharacter chi_;
  EvalAccuracy acc_;
  double t_max_;
  int shift_;                        // M
  std::vector<Complex> chi_values_;  // chi(m), m in [1, qM]
  std::vector<double> log_m_;        // log m
  std::vector<double> rsqrt_m_;      // m^{-1/2}
  std::vector<Complex> chi_res_;     // chi(a), a in [1, q]
  std::vector<double> log_w_;        // log(M + a/q)
  Complex epsilon_;                  // tau(chi) / (i^parity sqrt(q))
  Complex eta_;                      // epsilon^{-1/2}
};

// Real rotation of L(1/2 + it, chi) for primitive chi. One-shot convenience
// around LineEvaluator.
double hardy_z(double t, const dirichlet::DirichletCharacter& chi,
               const EvalAccuracy& acc = {});

// Expected number of zeros with 0 < gamma <= T: (T/2pi) log(qT/(2pi e)).
double expected_zero_count(int64_t q, double T);

// Engineering slack for the count check: 2 log(qT) + 5.
double zero_count_slack(int64_t q, double T);

inline double default_grid_step(int64_t q) {
  return 0.25 / std::log(static_cast<double>(q) + 3.0);
}

// All sign changes of hardy_z on (0, T], bisected to bracket width <=
// kZeroTolerance. The count is checked against expected_zero_count with
// zero_count_slack; on mismatch the grid is halved (at most 4 times) before
// a missed-zeros NumericError is thrown. A bracket with ordinate < 1e-4 is
// flagged as a central-zero diagnostic.
ZeroList find_zeros(const dirichlet::DirichletCharacter& chi, double T,
                    const EvalAccuracy& acc = {}, double grid_step = 0.0);

// L'(1, chi)/L(1, chi) by Richardson-extrapolated central differences along
// the real axis. Nontrivial chi only.
Complex log_derivative_at_1(const dirichlet::DirichletCharacter& chi,
                            const EvalAccuracy& acc = {});

} // namespace murmur::lfunc
