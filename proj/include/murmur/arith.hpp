#pragma once

#include <cstdint>
#include <vector>

#include "murmur/errors.hpp"

namespace murmur::arith {

// All primes strictly below `limit`, ascending.
struct PrimeTable {
  int64_t limit = 0;
  std::vector<int64_t> primes;

  bool covers(double x) const { return static_cast<double>(limit) >= x; }
};

struct PrimePower {
  int64_t p = 0;     // prime base
  int k = 0;         // exponent, k >= 2
  int64_t value = 0; // p^k

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Segmented sieve of Eratosthenes. limit in [2, 2^32].
PrimeTable sieve_primes(int64_t limit);

// All (p, k, p^k) with k >= 2 and p^k < limit, sorted by value.
std::vector<PrimePower> prime_powers(int64_t limit);

// Kronecker symbol (D/n), full extension: any D, any n (including n <= 0).
int kronecker(int64_t D, int64_t n);

// Deterministic trial-division primality check.
bool is_prime(int64_t n);

bool is_squarefree(int64_t n);

// D = 1 mod 4 squarefree (D != 1), or D = 4m with m = 2,3 mod 4 squarefree.
bool is_fundamental_discriminant(int64_t D);

// All fundamental discriminants in the closed interval [lo, hi], ascending.
std::vector<int64_t> list_fundamental_discriminants(int64_t lo, int64_t hi);

} // namespace murmur::arith
