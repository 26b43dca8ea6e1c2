// Data-preparation utility: computes low-lying zeros of elliptic curve
// L-functions for a small curve file and writes them in the zeros CSV
// format. The library itself only ingests elliptic zeros; this tool is how
// the bundled toy corpus was produced.
//
// Method: the completed L-function (classical normalization, center s = 1)
//   Lambda(s) = integral_1^inf g(y) (y^{s-1} + w y^{1-s}) dy,
//   g(y) = sum_n a_n exp(-2 pi n y / sqrt(N)),  w = (-1)^rank,
// evaluated on s = 1 + it by Gauss-Legendre panels. For w = +1 the function
// 2 sum W_i cos(t log y_i) is real; for w = -1 use the sine form. Zeros are
// sign changes, bisected to 1e-9. The curve data and the sign w are
// validated against the direct Dirichlet series at s = 3 before any zero is
// emitted.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "murmur/elliptic.hpp"
#include "murmur/errors.hpp"
#include "murmur/io.hpp"
#include "murmur/lfunc.hpp"

namespace {

using murmur::ec::EllipticCurve;
constexpr double kPi = std::numbers::pi;

// 16-point Gauss-Legendre on [-1, 1] (positive half; mirror for the rest).
const double kGlNode[8] = {0.0950125098376374, 0.2816035507792589,
                           0.4580167776572274, 0.6178762444026438,
                           0.7554044083550030, 0.8656312023878318,
                           0.9445750230732326, 0.9894009349916499};
const double kGlWeight[8] = {0.1894506104550685, 0.1826034150449236,
                             0.1691565193950025, 0.1495959888165767,
                             0.1246289712555339, 0.0951585116824928,
                             0.0622535239386479, 0.0271524594117541};

// a_n for n < n_max from a_p via multiplicativity and the Hecke recurrence
// a_{p^{k+1}} = a_p a_{p^k} - p a_{p^{k-1}} (good p), a_{p^k} = a_p^k (bad p).
std::vector<double> fourier_coefficients(const EllipticCurve& E, int64_t n_max) {
  std::vector<double> a(n_max, 0.0);
  if (n_max > 1) a[1] = 1.0;
  const int64_t disc = murmur::ec::discriminant(E);
  std::map<int64_t, double> ap_of;
  for (int64_t p : murmur::arith::sieve_primes(n_max).primes)
    ap_of[p] = murmur::ec::ap(E, p);

  for (int64_t n = 2; n < n_max; ++n) {
    int64_t m = n;
    double v = 1.0;
    for (int64_t p = 2; p * p <= n && m > 1; ++p) {
      if (m % p) continue;
      int64_t pk = 1;
      while (m % p == 0) {
        m /= p;
        pk *= p;
      }
      const double ap = ap_of.at(p);
      const bool bad = (disc % p == 0);
      double prev = 1.0, cur = ap;
      for (int64_t q = p; q < pk; q *= p) {
        const double next = bad ? cur * ap : cur * ap - static_cast<double>(p) * prev;
        prev = cur;
        cur = next;
      }
      v *= cur;
    }
    if (m > 1) v *= ap_of.at(m);
    a[n] = v;
  }
  return a;
}

struct CompletedL {
  int w = 1;
  std::vector<double> weight; // GL weight * g(y_i)
  std::vector<double> logy;

  double value(double t) const { // real rotation of Lambda(1 + it)
    double s = 0.0;
    if (w > 0) {
      for (size_t i = 0; i < weight.size(); ++i) s += weight[i] * std::cos(t * logy[i]);
    } else {
      for (size_t i = 0; i < weight.size(); ++i) s += weight[i] * std::sin(t * logy[i]);
    }
    return 2.0 * s;
  }
  double at_real_s(double s) const { // Lambda(s) for real s
    double sum = 0.0;
    for (size_t i = 0; i < weight.size(); ++i) {
      const double y = std::exp(logy[i]);
      sum += weight[i] * (std::pow(y, s - 1.0) + w * std::pow(y, 1.0 - s));
    }
    return sum;
  }
};

CompletedL build_completed_l(const EllipticCurve& E) {
  const double rtN = std::sqrt(static_cast<double>(E.conductor));
  const double c = 2.0 * kPi / rtN;
  const int64_t n_max = static_cast<int64_t>(std::ceil(40.0 / c)) + 2;
  const auto a = fourier_coefficients(E, n_max);

  auto g = [&](double y) {
    double s = 0.0;
    for (int64_t n = n_max - 1; n >= 1; --n) {
      const double e = std::exp(-c * static_cast<double>(n) * y);
      if (e == 0.0) continue;
      s += a[n] * e;
    }
    return s;
  };

  CompletedL L;
  L.w = (E.rank % 2 == 0) ? 1 : -1;
  // geometric panels from 1 to where g is negligible
  const double y_end = 40.0 / c;
  double lo = 1.0;
  while (lo < y_end) {
    const double hi = std::min(lo * 1.08, y_end);
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (int i = 0; i < 8; ++i) {
      for (double sgn : {-1.0, 1.0}) {
        const double y = mid + sgn * half * kGlNode[i];
        L.weight.push_back(half * kGlWeight[i] * g(y));
        L.logy.push_back(std::log(y));
      }
    }
    lo = hi;
  }

  // validate curve data and w: Lambda(3) against the Dirichlet series
  // (absolutely convergent; tail below 1e-6 with 3e4 terms)
  const double gamma3 = 2.0; // Gamma(3)
  const auto a_long = fourier_coefficients(E, 30000);
  double series = 0.0;
  for (int64_t n = static_cast<int64_t>(a_long.size()) - 1; n >= 1; --n)
    series += a_long[n] / (static_cast<double>(n) * n * n);
  const double lambda3_series = std::pow(rtN / (2.0 * kPi), 3.0) * gamma3 * series;
  const double lambda3_quad = L.at_real_s(3.0);
  if (std::abs(lambda3_quad - lambda3_series) >
      1e-6 * std::max(1.0, std::abs(lambda3_series)))
    throw murmur::NumericError(
        "completed-L validation failed for " + E.label + ": quadrature " +
        std::to_string(lambda3_quad) + " vs series " + std::to_string(lambda3_series) +
        " (wrong a_p, rank parity, or conductor?)");

  // parity consistency at the center
  const double center = L.value(0.0);
  if (L.w == 1 && E.rank == 0 && std::abs(center) < 1e-8)
    throw murmur::NumericError(E.label + ": Lambda(1) vanishes but rank is 0");
  return L;
}

murmur::lfunc::ZeroList find_curve_zeros(const EllipticCurve& E, double T) {
  const CompletedL L = build_completed_l(E);

  // |Lambda(1+it)| ~ sqrt(2 pi t) e^{-pi t/2} (sqrt(N)/2 pi); the quadrature
  // noise floor is ~eps * sum |W_i|. Refuse heights where the signal sinks
  // within 10^3 of the noise: sign changes there would be roundoff artifacts.
  double noise = 0.0;
  for (double w : L.weight) noise += std::abs(w);
  noise *= 2.2e-16;
  const double scale =
      std::sqrt(2.0 * kPi * T) * std::exp(-kPi * T / 2.0) *
      std::sqrt(static_cast<double>(E.conductor)) / (2.0 * kPi);
  if (scale < 1e3 * noise)
    throw murmur::NumericError(
        E.label + ": height " + std::to_string(T) +
        " beyond the double-precision envelope of the quadrature "
        "(completed L decays below the noise floor); lower --height");

  murmur::lfunc::ZeroList out;
  out.object_id = E.label;
  out.height_bound = T;
  out.source = murmur::lfunc::ZeroSource::Computed;

  const double h = 0.02;
  double t_prev = (L.w == -1 || E.rank >= 2) ? 0.02 : 0.0; // skip central zeros
  double z_prev = L.value(t_prev);
  for (double t = t_prev + h; t_prev < T; t += h) {
    const double t_cur = std::min(t, T);
    const double z_cur = L.value(t_cur);
    if ((z_prev < 0.0) != (z_cur < 0.0)) {
      double lo = t_prev, hi = t_cur, zlo = z_prev;
      while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        const double zm = L.value(mid);
        if ((zlo < 0.0) != (zm < 0.0)) {
          hi = mid;
        } else {
          lo = mid;
          zlo = zm;
        }
      }
      out.gammas.push_back(0.5 * (lo + hi));
    }
    t_prev = t_cur;
    z_prev = z_cur;
    if (t_cur >= T) break;
  }

  // zero-count sanity for a degree-2 L-function
  const double expected =
      T / kPi * std::log(std::sqrt(static_cast<double>(E.conductor)) * T /
                         (2.0 * kPi * std::numbers::e));
  const double slack = 2.0 * std::log(static_cast<double>(E.conductor) * T) + 5.0;
  if (std::abs(static_cast<double>(out.gammas.size()) - expected) > slack)
    throw murmur::NumericError("zero count " + std::to_string(out.gammas.size()) +
                               " vs expected " + std::to_string(expected) + " for " +
                               E.label);
  return out;
}

} // namespace

int main(int argc, char** argv) {
  std::string curves_path, out_path;
  double height = 18.0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    auto next = [&](const char* flag) -> std::string {
      if (i + 1 >= argc) {
        std::fprintf(stderr, "missing value for %s\n", flag);
        std::exit(1);
      }
      return argv[++i];
    };
    if (arg == "--curves") {
      curves_path = next("--curves");
    } else if (arg == "--out") {
      out_path = next("--out");
    } else if (arg == "--height") {
      height = std::atof(next("--height").c_str());
    } else {
      std::fprintf(stderr, "usage: gen-ec-zeros --curves FILE --out FILE [--height T]\n");
      return 1;
    }
  }
  if (curves_path.empty() || out_path.empty()) {
    std::fprintf(stderr, "usage: gen-ec-zeros --curves FILE --out FILE [--height T]\n");
    return 1;
  }

  try {
    const auto corpus = murmur::io::ingest_curves(curves_path);
    for (const auto& w : corpus.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());

    std::map<std::string, murmur::lfunc::ZeroList> zeros;
    for (const auto& E : corpus.curves) {
      auto zl = find_curve_zeros(E, height);
      std::printf("%-8s N=%-4lld rank=%d  zeros to %g: %zu (first %.6f)\n",
                  E.label.c_str(), static_cast<long long>(E.conductor), E.rank, height,
                  zl.gammas.size(), zl.gammas.empty() ? 0.0 : zl.gammas.front());
      zeros[E.label] = std::move(zl);
    }
    murmur::io::persist_zeros(zeros, out_path);
    std::printf("wrote %s\n", out_path.c_str());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
