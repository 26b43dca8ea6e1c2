#include "murmur/lfunc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace murmur::lfunc {

namespace {

constexpr double kPi = std::numbers::pi;

// B_{2j} / (2j)! for j = 1..16.
constexpr int kMaxEmTerms = 16;
const double kBernoulliOverFact[kMaxEmTerms + 1] = {
    0.0,
    (1.0 / 6.0) / 2.0,
    (-1.0 / 30.0) / 24.0,
    (1.0 / 42.0) / 720.0,
    (-1.0 / 30.0) / 40320.0,
    (5.0 / 66.0) / 3628800.0,
    (-691.0 / 2730.0) / 479001600.0,
    (7.0 / 6.0) / 87178291200.0,
    (-3617.0 / 510.0) / 20922789888000.0,
    (43867.0 / 798.0) / 6402373705728000.0,
    (-174611.0 / 330.0) / 2432902008176640000.0,
    (854513.0 / 138.0) / 1.1240007277776077e21,
    (-236364091.0 / 2730.0) / 6.204484017332394e23,
    (8553103.0 / 6.0) / 4.0329146112660565e26,
    (-23749461029.0 / 870.0) / 3.0488834461171387e29,
    (8615841276005.0 / 14322.0) / 2.6525285981219107e32,
    (-7709321041217.0 / 510.0) / 2.6313083693369353e35,
};

int effective_shift(const EvalAccuracy& acc, double im_s) {
  int m = std::max(acc.shift_terms, static_cast<int>(std::ceil(2.0 * std::abs(im_s))));
  return std::max(m, 2);
}

void validate_acc(const EvalAccuracy& acc) {
  if (!(acc.abs_tol > 0.0)) throw DomainError("EvalAccuracy: abs_tol must be > 0");
  if (acc.em_terms < 2 || acc.em_terms > kMaxEmTerms)
    throw DomainError("EvalAccuracy: em_terms must be in [2, 16]");
  if (acc.shift_terms < 1) throw DomainError("EvalAccuracy: shift_terms must be >= 1");
}

// Euler-Maclaurin tail of sum_{n >= M} (n + a)^{-s} expressed at w = M + a:
//   w^{1-s}/(s-1) + w^{-s}/2 + sum_j B_{2j}/(2j)! (s)_{2j-1} w^{-s-2j+1}.
// `pole_part` toggles the w^{1-s}/(s-1) term so callers that cancel the pole
// across residues can handle it separately.
Complex em_tail(Complex s, double w, int em_terms, bool pole_part,
                double* error_estimate = nullptr) {
  const double logw = std::log(w);
  const Complex w_minus_s = std::exp(-s * logw);
  Complex bracket = 0.5;
  if (pole_part) bracket += w / (s - 1.0);

  Complex rising = s; // (s)_{2j-1} built incrementally
  double winv2 = 1.0 / (w * w);
  double wpow = 1.0 / w; // w^{1-2j}, starting at j = 1
  for (int j = 1; j <= em_terms; ++j) {
    if (j > 1) {
      rising *= (s + static_cast<double>(2 * j - 3)) * (s + static_cast<double>(2 * j - 2));
      wpow *= winv2;
    }
    bracket += kBernoulliOverFact[j] * rising * wpow;
  }
  if (error_estimate) {
    Complex next = rising * (s + static_cast<double>(2 * em_terms - 1)) *
                   (s + static_cast<double>(2 * em_terms));
    double mag = std::abs(kBernoulliOverFact[std::min(em_terms + 1, kMaxEmTerms)]) *
                 std::abs(next) * wpow * winv2 * std::abs(w_minus_s);
    double sigma = s.real();
    double growth = (std::abs(s) + 2.0 * em_terms + 2.0) /
                    std::max(1.0, sigma + 2.0 * em_terms + 1.0);
    *error_estimate = mag * growth;
  }
  return w_minus_s * bracket;
}

} // namespace

Complex lgamma_complex(Complex z) {
  // Lanczos, g = 7, 9 coefficients; right half plane. For Re z < 0.5 shift up
  // with lgamma(z) = lgamma(z+1) - log z (our callers stay near the strip).
  static const double c[9] = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  int shifts = 0;
  while (z.real() < 0.5) {
    ++shifts;
    z += 1.0;
    if (shifts > 8) throw DomainError("lgamma_complex: argument too far left");
  }
  Complex acc_log = 0.0;
  if (shifts > 0) {
    Complex zz = z;
    for (int i = 0; i < shifts; ++i) {
      zz -= 1.0;
      acc_log += std::log(zz);
    }
  }
  Complex x = c[0];
  for (int i = 1; i < 9; ++i) x += c[i] / (z - 1.0 + static_cast<double>(i));
  Complex t = z + 6.5;
  return 0.5 * std::log(2.0 * kPi) + (z - 0.5) * std::log(t) - t + std::log(x) - acc_log;
}

Complex hurwitz_zeta(Complex s, double a, const EvalAccuracy& acc) {
  validate_acc(acc);
  if (s == Complex(1.0))
    throw DomainError("hurwitz_zeta: pole at s = 1");
  if (!(a > 0.0 && a <= 1.0))
    throw DomainError("hurwitz_zeta: a must lie in (0, 1]");
  if (std::abs(s.imag()) > 500.0)
    throw DomainError("hurwitz_zeta: |Im s| above the 500 envelope");
  if (s.real() <= 1.0 - 2.0 * acc.em_terms)
    throw DomainError("hurwitz_zeta: Re s below the continued region");

  const int M = effective_shift(acc, s.imag());
  Complex direct = 0.0;
  for (int n = M - 1; n >= 0; --n) // small terms first
    direct += std::exp(-s * std::log(static_cast<double>(n) + a));

  double err = 0.0;
  Complex tail = em_tail(s, static_cast<double>(M) + a, acc.em_terms, true, &err);
  if (err > acc.abs_tol)
    throw NumericError("hurwitz_zeta: accuracy parameters insufficient (estimated "
                       "tail error above abs_tol); raise shift_terms or em_terms");
  return direct + tail;
}

Complex dirichlet_l(Complex s, const dirichlet::DirichletCharacter& chi,
                    const EvalAccuracy& acc) {
  validate_acc(acc);
  if (std::abs(s.imag()) > 500.0)
    throw DomainError("dirichlet_l: |Im s| above the 500 envelope");
  if (s.real() <= 1.0 - 2.0 * acc.em_terms)
    throw DomainError("dirichlet_l: Re s below the continued region");

  const int64_t q = chi.modulus();
  const int M = effective_shift(acc, s.imag());

  // chi value table for one period
  std::vector<Complex> chi_res(q + 1);
  for (int64_t a = 1; a <= q; ++a) chi_res[a] = chi.value(a);

  Complex direct = 0.0;
  for (int64_t m = static_cast<int64_t>(M) * q; m >= 1; --m) {
    Complex c = chi_res[((m - 1) % q) + 1];
    if (c == Complex(0.0)) continue;
    direct += c * std::exp(-s * std::log(static_cast<double>(m)));
  }

  // Per-residue tails. The w^{1-s}/(s-1) pole parts cancel since
  // sum_a chi(a) = 0; near s = 1 they are replaced by the expansion
  // w^{1-s}/(s-1) = 1/(s-1) - log w * phi((1-s) log w) with the exact-zero
  // 1/(s-1) sum dropped.
  const Complex qs = std::exp(-s * std::log(static_cast<double>(q)));
  const bool near_pole = std::abs(s - Complex(1.0)) < 1e-8;
  Complex tails = 0.0;
  double err = 0.0;
  for (int64_t a = 1; a <= q; ++a) {
    if (chi_res[a] == Complex(0.0)) continue;
    const double w = static_cast<double>(M) + static_cast<double>(a) / static_cast<double>(q);
    double e1 = 0.0;
    Complex t = em_tail(s, w, acc.em_terms, !near_pole, &e1);
    if (near_pole) {
      const double lw = std::log(w);
      const Complex z = (1.0 - s) * lw;
      // phi(z) = (e^z - 1)/z = 1 + z/2 + z^2/6 for |z| ~ 1e-8
      const Complex phi = 1.0 + z / 2.0 + z * z / 6.0;
      t += -lw * phi;
    }
    tails += chi_res[a] * t;
    err = std::max(err, e1);
  }
  if (err > acc.abs_tol)
    throw NumericError("dirichlet_l: accuracy parameters insufficient; raise "
                       "shift_terms or em_terms");
  return direct + qs * tails;
}

LineEvaluator::LineEvaluator(const dirichlet::DirichletCharacter& chi, double t_max,
                             const EvalAccuracy& acc)
    : chi_(chi), acc_(acc), t_max_(t_max) {
  validate_acc(acc);
  if (!(t_max >= 0.0) || t_max > 500.0)
    throw DomainError("LineEvaluator: t_max must lie in [0, 500]");

  const int64_t q = chi.modulus();
  shift_ = effective_shift(acc, t_max);

  chi_res_.assign(q + 1, 0.0);
  for (int64_t a = 1; a <= q; ++a) chi_res_[a] = chi.value(a);

  const int64_t n_terms = static_cast<int64_t>(shift_) * q;
  chi_values_.resize(n_terms + 1);
  log_m_.resize(n_terms + 1);
  rsqrt_m_.resize(n_terms + 1);
  for (int64_t m = 1; m <= n_terms; ++m) {
    chi_values_[m] = chi_res_[((m - 1) % q) + 1];
    log_m_[m] = std::log(static_cast<double>(m));
    rsqrt_m_[m] = 1.0 / std::sqrt(static_cast<double>(m));
  }
  log_w_.resize(q + 1);
  for (int64_t a = 1; a <= q; ++a)
    log_w_[a] = std::log(static_cast<double>(shift_) +
                         static_cast<double>(a) / static_cast<double>(q));

  const Complex tau = dirichlet::gauss_sum(chi);
  const Complex i_pow_a = chi.parity() == 0 ? Complex(1.0, 0.0) : Complex(0.0, 1.0);
  epsilon_ = tau / (i_pow_a * std::sqrt(static_cast<double>(q)));
  if (std::abs(std::abs(epsilon_) - 1.0) > 1e-8)
    throw NumericError("LineEvaluator: |root number| != 1; character not primitive?");
  eta_ = 1.0 / std::sqrt(epsilon_);
}

Complex LineEvaluator::l_value(double t) const {
  const Complex s(0.5, t);
  const int64_t n_terms = static_cast<int64_t>(chi_values_.size()) - 1;
  double re = 0.0, im = 0.0;
  for (int64_t m = n_terms; m >= 1; --m) {
    const Complex& c = chi_values_[m];
    if (c.real() == 0.0 && c.imag() == 0.0) continue;
    // m^{-s} = m^{-1/2} e^{-it log m}
    const double ang = -t * log_m_[m];
    const double mod = rsqrt_m_[m];
    const double cr = mod * std::cos(ang), ci = mod * std::sin(ang);
    re += c.real() * cr - c.imag() * ci;
    im += c.real() * ci + c.imag() * cr;
  }
  Complex direct(re, im);

  const int64_t q = chi_.modulus();
  Complex tails = 0.0;
  for (int64_t a = 1; a <= q; ++a) {
    if (chi_res_[a] == Complex(0.0)) continue;
    tails += chi_res_[a] * em_tail(s, std::exp(log_w_[a]), acc_.em_terms, true);
  }
  const Complex qs = std::exp(-s * std::log(static_cast<double>(q)));
  return direct + qs * tails;
}

Complex LineEvaluator::line_phase(double t) const {
  // unit phase of (q/pi)^{(s+a)/2} Gamma((s+a)/2) at s = 1/2 + it
  const int a = chi_.parity();
  const Complex z(0.25 + 0.5 * a, 0.5 * t);
  const double theta =
      0.5 * t * std::log(static_cast<double>(chi_.modulus()) / kPi) +
      lgamma_complex(z).imag();
  return {std::cos(theta), std::sin(theta)};
}

double LineEvaluator::hardy_z(double t) const {
  if (std::abs(t) > t_max_ + 1.0)
    throw DomainError("LineEvaluator: |t| beyond the constructed t_max");
  const Complex v = eta_ * line_phase(t) * l_value(t);
  if (std::abs(v.imag()) > 1e-9 * (1.0 + std::abs(v.real())))
    throw NumericError("hardy_z: phase convention failed to produce a real "
                       "value for " + chi_.id() + " at t = " + std::to_string(t));
  return v.real();
}

double hardy_z(double t, const dirichlet::DirichletCharacter& chi,
               const EvalAccuracy& acc) {
  return LineEvaluator(chi, std::abs(t), acc).hardy_z(t);
}

double expected_zero_count(int64_t q, double T) {
  return T / (2.0 * kPi) * std::log(static_cast<double>(q) * T / (2.0 * kPi * std::numbers::e));
}

double zero_count_slack(int64_t q, double T) {
  return 2.0 * std::log(static_cast<double>(q) * T) + 5.0;
}

ZeroList find_zeros(const dirichlet::DirichletCharacter& chi, double T,
                    const EvalAccuracy& acc, double grid_step) {
  if (!(T > 0.0)) throw DomainError("find_zeros: T must be > 0");
  if (grid_step < 0.0) throw DomainError("find_zeros: grid_step must be > 0");
  double h = grid_step > 0.0 ? grid_step : default_grid_step(chi.modulus());

  const LineEvaluator eval(chi, T, acc);
  const double expected = expected_zero_count(chi.modulus(), T);
  const double slack = zero_count_slack(chi.modulus(), T);

  for (int attempt = 0;; ++attempt) {
    std::vector<double> zeros;
    double t_prev = 0.0;
    double z_prev = eval.hardy_z(t_prev);
    for (double t = h; t_prev < T; t += h) {
      const double t_cur = std::min(t, T);
      double z_cur = eval.hardy_z(t_cur);
      if ((z_prev < 0.0) != (z_cur < 0.0)) {
        double lo = t_prev, hi = t_cur, zlo = z_prev;
        while (hi - lo > kZeroTolerance) {
          const double mid = 0.5 * (lo + hi);
          const double zm = eval.hardy_z(mid);
          if ((zlo < 0.0) != (zm < 0.0)) {
            hi = mid;
          } else {
            lo = mid;
            zlo = zm;
          }
        }
        const double gamma = 0.5 * (lo + hi);
        if (gamma < 1e-4)
          throw NumericError("find_zeros: sign change at ordinate < 1e-4 for " +
                             chi.id() + "; central zero must be handled by caller");
        zeros.push_back(gamma);
      }
      t_prev = t_cur;
      z_prev = z_cur;
      if (t_cur >= T) break;
    }

    if (std::abs(static_cast<double>(zeros.size()) - expected) <= slack) {
      ZeroList out;
      out.object_id = chi.id();
      out.gammas = std::move(zeros);
      out.height_bound = T;
      out.source = ZeroSource::Computed;
      return out;
    }
    if (attempt >= 4)
      throw NumericError("find_zeros: zero count " + std::to_string(zeros.size()) +
                         " vs expected " + std::to_string(expected) + " (slack " +
                         std::to_string(slack) + ") for " + chi.id() +
                         "; grid refinement exhausted");
    h *= 0.5;
  }
}

Complex log_derivative_at_1(const dirichlet::DirichletCharacter& chi,
                            const EvalAccuracy& acc) {
  EvalAccuracy tight = acc;
  tight.abs_tol = std::min(acc.abs_tol, 1e-12);

  const Complex l1 = dirichlet_l(1.0, chi, tight);
  if (std::abs(l1) < 1e-12)
    throw NumericError("log_derivative_at_1: L(1, chi) vanishes (degenerate)");

  const double h = 1e-3;
  auto central = [&](double step) {
    return (dirichlet_l(Complex(1.0 + step), chi, tight) -
            dirichlet_l(Complex(1.0 - step), chi, tight)) /
           (2.0 * step);
  };
  const Complex d1 = central(h);
  const Complex d2 = central(h / 2.0);
  const Complex deriv = (4.0 * d2 - d1) / 3.0;
  return deriv / l1;
}

} // namespace murmur::lfunc
