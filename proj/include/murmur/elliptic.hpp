#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "murmur/arith.hpp"
#include "murmur/errors.hpp"

namespace murmur::ec {

// Integral Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6,
// assumed minimal. Conductor and rank are ingested metadata.
struct EllipticCurve {
  std::string label;
  int64_t a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
  int64_t conductor = 0;
  int rank = 0;
};

// Weierstrass discriminant from the b-covariants. Throws DataError on
// overflow past int64 (cannot occur for desk-scale models).
int64_t discriminant(const EllipticCurve& E);

// #E(F_p) including the point at infinity. Requires good reduction.
int64_t count_points(const EllipticCurve& E, int64_t p);

// Naive O(p^2) enumeration over the affine plane, plus infinity.
// Oracle for count_points; good-reduction primes only.
int64_t count_points_naive(const EllipticCurve& E, int64_t p);

// Trace of Frobenius. Good p: p + 1 - #E(F_p). Bad p: p - #E_ns(F_p),
// which lands in {-1, 0, 1}.
int ap(const EllipticCurve& E, int64_t p);

// (p, ap) for all primes p < limit, ascending.
std::vector<std::pair<int64_t, int>> ap_vector(const EllipticCurve& E, int64_t limit);

} // namespace murmur::ec
