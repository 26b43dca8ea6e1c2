#include "murmur/elliptic.hpp"

#include <cmath>
#include <string>

namespace murmur::ec {

namespace {

// keeps every intermediate product below 2^62
constexpr int64_t kMaxCountingPrime = int64_t(1) << 26;

void check_prime_size(int64_t p, const EllipticCurve& E) {
  if (p > kMaxCountingPrime)
    throw DomainError("point counting capped at p <= 2^26 (curve " + E.label + ")");
}

int64_t mod(int64_t a, int64_t p) {
  int64_t r = a % p;
  return r < 0 ? r + p : r;
}

// f(x) = 4x^3 + b2 x^2 + 2 b4 x + b6 mod p, the completed-square cubic.
struct CompletedCubic {
  int64_t b2, b4, b6, p;
  int64_t operator()(int64_t x) const {
    int64_t x2 = (x * x) % p;
    int64_t v = (4 * ((x2 * x) % p)) % p;
    v = (v + b2 * x2) % p;
    v = (v + 2 * b4 * x) % p;
    v = (v + b6) % p;
    return mod(v, p);
  }
  int64_t deriv(int64_t x) const { // 12x^2 + 2 b2 x + 2 b4
    int64_t v = (12 * ((x * x) % p)) % p;
    v = (v + 2 * b2 * x) % p;
    v = (v + 2 * b4) % p;
    return mod(v, p);
  }
};

CompletedCubic completed_cubic(const EllipticCurve& E, int64_t p) {
  int64_t b2 = mod(E.a1 * E.a1 + 4 * E.a2, p);
  int64_t b4 = mod(2 * E.a4 + E.a1 * E.a3, p);
  int64_t b6 = mod(E.a3 * E.a3 + 4 * E.a6, p);
  return {b2, b4, b6, p};
}

// Quadratic residue indicator table: qr[v] = +1 (nonzero square), -1
// (nonsquare), 0 (v = 0). Built in O(p).
std::vector<int8_t> square_table(int64_t p) {
  std::vector<int8_t> qr(p, -1);
  qr[0] = 0;
  for (int64_t r = 1; r <= p / 2; ++r) qr[(r * r) % p] = 1;
  return qr;
}

int64_t count_points_small(const EllipticCurve& E, int64_t p) {
  // direct enumeration on the original model; fine for p in {2, 3}
  int64_t count = 1; // infinity
  for (int64_t x = 0; x < p; ++x)
    for (int64_t y = 0; y < p; ++y) {
      int64_t lhs = mod(y * y + E.a1 * x * y + E.a3 * y, p);
      int64_t rhs = mod(((x * x) % p) * x + E.a2 * x * x + E.a4 * x + E.a6, p);
      if (lhs == rhs) ++count;
    }
  return count;
}

bool curve_is_singular_mod(const EllipticCurve& E, int64_t p) {
  return mod(discriminant(E), p) == 0;
}

// a_p at a bad prime: p - #E_ns(F_p) with E_ns the nonsingular locus of the
// reduced minimal model (infinity included).
int ap_bad(const EllipticCurve& E, int64_t p) {
  if (p <= 3) {
    int64_t ns = 1; // infinity is always nonsingular
    for (int64_t x = 0; x < p; ++x)
      for (int64_t y = 0; y < p; ++y) {
        int64_t lhs = mod(y * y + E.a1 * x * y + E.a3 * y, p);
        int64_t rhs = mod(((x * x) % p) * x + E.a2 * x * x + E.a4 * x + E.a6, p);
        if (lhs != rhs) continue;
        // partials of F = y^2 + a1 xy + a3 y - x^3 - a2 x^2 - a4 x - a6
        int64_t fx = mod(E.a1 * y - 3 * x * x - 2 * E.a2 * x - E.a4, p);
        int64_t fy = mod(2 * y + E.a1 * x + E.a3, p);
        if (fx != 0 || fy != 0) ++ns;
      }
    return static_cast<int>(p - ns);
  }
  // p > 3: count on the completed-square model Y^2 = f(X); the substitution
  // Y = 2y + a1 x + a3 is a bijection on affine points for odd p.
  CompletedCubic f = completed_cubic(E, p);
  auto qr = square_table(p);
  int64_t ns_affine = 0;
  for (int64_t x = 0; x < p; ++x) {
    int64_t v = f(x);
    if (v != 0) {
      ns_affine += 1 + qr[v];
    } else if (f.deriv(x) != 0) {
      ns_affine += 1; // simple root of f: (x, 0) is nonsingular
    }
  }
  return static_cast<int>(p - 1 - ns_affine);
}

} // namespace

int64_t discriminant(const EllipticCurve& E) {
  using i128 = __int128;
  i128 a1 = E.a1, a2 = E.a2, a3 = E.a3, a4 = E.a4, a6 = E.a6;
  i128 b2 = a1 * a1 + 4 * a2;
  i128 b4 = 2 * a4 + a1 * a3;
  i128 b6 = a3 * a3 + 4 * a6;
  i128 b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  i128 disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
  constexpr i128 lim = i128(INT64_MAX);
  if (disc > lim || disc < -lim)
    throw DataError("discriminant: overflow for curve " + E.label);
  return static_cast<int64_t>(disc);
}

int64_t count_points_naive(const EllipticCurve& E, int64_t p) {
  if (curve_is_singular_mod(E, p))
    throw DomainError("count_points: bad reduction at p = " + std::to_string(p) +
                      " for curve " + E.label + "; use ap()");
  return count_points_small(E, p);
}

int64_t count_points(const EllipticCurve& E, int64_t p) {
  check_prime_size(p, E);
  if (curve_is_singular_mod(E, p))
    throw DomainError("count_points: bad reduction at p = " + std::to_string(p) +
                      " for curve " + E.label + "; use ap()");
  if (p <= 3) return count_points_small(E, p);

  // #E(F_p) = p + 1 + sum_x chi(f(x)) over the completed square model
  CompletedCubic f = completed_cubic(E, p);
  auto qr = square_table(p);
  int64_t chi_sum = 0;
  for (int64_t x = 0; x < p; ++x) chi_sum += qr[f(x)];
  return p + 1 + chi_sum;
}

int ap(const EllipticCurve& E, int64_t p) {
  check_prime_size(p, E);
  if (curve_is_singular_mod(E, p)) return ap_bad(E, p);
  int64_t a = p + 1 - count_points(E, p);
  // Hasse
  if (static_cast<double>(a) * a > 4.0 * p)
    throw NumericError("ap: Hasse bound violated at p = " + std::to_string(p) +
                       " for curve " + E.label);
  return static_cast<int>(a);
}

std::vector<std::pair<int64_t, int>> ap_vector(const EllipticCurve& E, int64_t limit) {
  if (limit < 2) throw DomainError("ap_vector: limit must be >= 2");
  arith::PrimeTable primes = arith::sieve_primes(limit);
  std::vector<std::pair<int64_t, int>> out(primes.primes.size());
  for (size_t i = 0; i < primes.primes.size(); ++i) {
    int64_t p = primes.primes[i];
    out[i] = {p, ap(E, p)};
  }
  return out;
}

} // namespace murmur::ec
