#include "murmur/arith.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace murmur::arith {

namespace {

int64_t isqrt64(int64_t n) {
  if (n < 0) return -1;
  auto r = static_cast<int64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

} // namespace

PrimeTable sieve_primes(int64_t limit) {
  if (limit < 2 || limit > (int64_t(1) << 32))
    throw BoundsError("sieve_primes: limit must be in [2, 2^32], got " +
                      std::to_string(limit));

  PrimeTable table;
  table.limit = limit;

  const int64_t max_n = limit - 1; // sieve covers [0, max_n]
  const int64_t root = isqrt64(max_n);

  // small primes <= sqrt(max_n)
  std::vector<char> small(root + 1, 1);
  for (int64_t i = 2; i * i <= root; ++i)
    if (small[i])
      for (int64_t j = i * i; j <= root; j += i) small[j] = 0;

  std::vector<int64_t> sieving_primes;
  for (int64_t i = 2; i <= root; ++i)
    if (small[i]) sieving_primes.push_back(i);

  const int64_t segment_size = std::max<int64_t>(root, 1 << 16);
  std::vector<char> segment(segment_size);

  for (int64_t low = 2; low <= max_n; low += segment_size) {
    const int64_t high = std::min(low + segment_size - 1, max_n);
    std::fill(segment.begin(), segment.begin() + (high - low + 1), 1);

    for (int64_t p : sieving_primes) {
      if (p * p > high) break;
      int64_t start = std::max(p * p, ((low + p - 1) / p) * p);
      for (int64_t j = start; j <= high; j += p) segment[j - low] = 0;
    }
    for (int64_t n = low; n <= high; ++n)
      if (segment[n - low]) table.primes.push_back(n);
  }
  return table;
}

std::vector<PrimePower> prime_powers(int64_t limit) {
  if (limit < 2)
    throw BoundsError("prime_powers: limit must be >= 2, got " +
                      std::to_string(limit));

  std::vector<PrimePower> out;
  // p^2 < limit forces p <= sqrt(limit)
  PrimeTable base = sieve_primes(isqrt64(limit - 1) + 2);
  for (int64_t p : base.primes) {
    int64_t v = p * p;
    int k = 2;
    while (v < limit) {
      out.push_back({p, k, v});
      if (v > limit / p) break; // next power would overflow past limit
      v *= p;
      ++k;
    }
  }
  std::sort(out.begin(), out.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.value < b.value; });
  return out;
}

int kronecker(int64_t D, int64_t n) {
  int64_t a = D;
  // (a/0) = 1 iff a = +-1
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;

  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result; // (a/-1) = -1 for a < 0
  }
  // factor out 2 from the bottom: (a/2) = 0 if a even, else (-1)^((a^2-1)/8)
  while ((n & 1) == 0) {
    n >>= 1;
    int64_t m = ((a % 8) + 8) % 8;
    if (m == 0 || m == 2 || m == 4 || m == 6) return 0;
    if (m == 3 || m == 5) result = -result;
  }
  // Jacobi symbol (a/n) for odd n > 0 by reciprocity
  a %= n;
  if (a < 0) a += n;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      int64_t m = n % 8;
      if (m == 3 || m == 5) result = -result;
    }
    std::swap(a, n);
    if ((a % 4 == 3) && (n % 4 == 3)) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

bool is_prime(int64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (int64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

bool is_squarefree(int64_t n) {
  if (n == 0) return false;
  n = std::llabs(n);
  if (n % 4 == 0) return false;
  for (int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      n /= d;
      if (n % d == 0) return false;
    }
  }
  return true;
}

bool is_fundamental_discriminant(int64_t D) {
  if (D == 1) return false;
  int64_t r = ((D % 4) + 4) % 4;
  if (r == 1) return is_squarefree(D);
  if (r == 0) {
    int64_t m = D / 4;
    int64_t mr = ((m % 4) + 4) % 4;
    return (mr == 2 || mr == 3) && is_squarefree(m);
  }
  return false;
}

std::vector<int64_t> list_fundamental_discriminants(int64_t lo, int64_t hi) {
  if (lo > hi)
    throw DomainError("list_fundamental_discriminants: lo > hi");
  std::vector<int64_t> out;
  for (int64_t D = lo; D <= hi; ++D)
    if (is_fundamental_discriminant(D)) out.push_back(D);
  return out;
}

} // namespace murmur::arith
