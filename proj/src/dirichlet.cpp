#include "murmur/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "murmur/arith.hpp"

namespace murmur::dirichlet {

namespace {

int64_t pow_mod(int64_t base, int64_t exp, int64_t m) {
  int64_t r = 1;
  base %= m;
  if (base < 0) base += m;
  while (exp > 0) {
    if (exp & 1) r = (r * base) % m;
    base = (base * base) % m;
    exp >>= 1;
  }
  return r;
}

std::vector<int64_t> prime_factors(int64_t n) {
  std::vector<int64_t> out;
  for (int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

bool is_primitive_root(int64_t g, int64_t q, const std::vector<int64_t>& factors_q1) {
  for (int64_t r : factors_q1)
    if (pow_mod(g, (q - 1) / r, q) == 1) return false;
  return true;
}

} // namespace

DirichletCharacter DirichletCharacter::kronecker(int64_t D) {
  if (!arith::is_fundamental_discriminant(D))
    throw DomainError("DirichletCharacter: " + std::to_string(D) +
                      " is not a fundamental discriminant");
  DirichletCharacter chi;
  chi.kind_ = CharKind::Kronecker;
  chi.D_ = D;
  chi.q_ = std::llabs(D);
  chi.parity_ = D < 0 ? 1 : 0; // chi(-1) = sign of D
  return chi;
}

DirichletCharacter DirichletCharacter::mod_prime(int64_t q, int64_t g, int64_t index) {
  if (q < 3 || !arith::is_prime(q))
    throw DomainError("DirichletCharacter: modulus must be an odd prime");
  if (index % (q - 1) == 0)
    throw DomainError("DirichletCharacter: index 0 gives the trivial character");
  auto factors = prime_factors(q - 1);
  if (g < 2 || g >= q || !is_primitive_root(g, q, factors))
    throw DomainError("DirichletCharacter: " + std::to_string(g) +
                      " is not a primitive root mod " + std::to_string(q));

  DirichletCharacter chi;
  chi.kind_ = CharKind::ModPrime;
  chi.q_ = q;
  chi.g_ = g;
  chi.index_ = ((index % (q - 1)) + (q - 1)) % (q - 1);
  chi.parity_ = static_cast<int>(chi.index_ % 2);

  auto dlog = std::make_shared<std::vector<int32_t>>(q, -1);
  int64_t v = 1;
  for (int64_t j = 0; j < q - 1; ++j) {
    (*dlog)[v] = static_cast<int32_t>(j);
    v = (v * g) % q;
  }
  chi.dlog_ = std::move(dlog);
  return chi;
}

Complex DirichletCharacter::value(int64_t n) const {
  int64_t r = n % q_;
  if (r < 0) r += q_;
  if (kind_ == CharKind::Kronecker) {
    if (std::gcd(r, q_) != 1) return 0.0;
    return static_cast<double>(arith::kronecker(D_, n));
  }
  if (r == 0) return 0.0;
  int64_t j = (*dlog_)[r];
  int64_t e = (j * index_) % (q_ - 1);
  double angle = 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(q_ - 1);
  return {std::cos(angle), std::sin(angle)};
}

DirichletCharacter DirichletCharacter::conjugate() const {
  if (kind_ == CharKind::Kronecker) return *this;
  DirichletCharacter chi = *this;
  chi.index_ = (q_ - 1) - index_;
  chi.parity_ = static_cast<int>(chi.index_ % 2);
  return chi;
}

std::string DirichletCharacter::id() const {
  if (kind_ == CharKind::Kronecker) return "K" + std::to_string(D_);
  return "M" + std::to_string(q_) + "g" + std::to_string(g_) + "k" + std::to_string(index_);
}

Complex gauss_sum(const DirichletCharacter& chi) {
  const int64_t q = chi.modulus();
  Complex tau = 0.0;
  for (int64_t a = 1; a <= q; ++a) {
    Complex c = chi.value(a);
    if (c == Complex(0.0)) continue;
    double angle = 2.0 * std::numbers::pi * static_cast<double>(a) / static_cast<double>(q);
    tau += c * Complex{std::cos(angle), std::sin(angle)};
  }
  return tau;
}

int64_t smallest_primitive_root(int64_t q) {
  if (q < 3 || !arith::is_prime(q))
    throw DomainError("smallest_primitive_root: q must be an odd prime");
  auto factors = prime_factors(q - 1);
  for (int64_t g = 2; g < q; ++g)
    if (is_primitive_root(g, q, factors)) return g;
  throw NumericError("smallest_primitive_root: none found (unreachable)");
}

CharacterFamily build_odd_family(int64_t q, int64_t count, uint64_t seed) {
  if (count <= 0 || count % 2 != 0)
    throw DomainError("build_odd_family: count must be a positive even integer");
  if (count > (q - 1) / 2)
    throw DomainError("build_odd_family: only " + std::to_string((q - 1) / 2) +
                      " odd characters exist mod " + std::to_string(q));
  int64_t g = smallest_primitive_root(q);

  // Conjugate pairs {k, q-1-k} of odd indices, represented by k < (q-1)/2.
  // The self-conjugate index (q-1)/2 (odd iff q = 3 mod 4) is excluded: count
  // is even, so only full pairs are sampled.
  std::vector<int64_t> pool;
  for (int64_t k = 1; k < (q - 1) - k; k += 2) pool.push_back(k);
  const int64_t pairs_needed = count / 2;
  if (pairs_needed > static_cast<int64_t>(pool.size()))
    throw DomainError("build_odd_family: " + std::to_string(pairs_needed) +
                      " conjugate pairs requested but only " +
                      std::to_string(pool.size()) + " exist mod " + std::to_string(q));

  // Partial Fisher-Yates driven by splitmix64.
  uint64_t state = seed;
  for (int64_t i = 0; i < pairs_needed; ++i) {
    uint64_t r = splitmix64(state);
    int64_t j = i + static_cast<int64_t>(r % static_cast<uint64_t>(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  std::vector<int64_t> chosen(pool.begin(), pool.begin() + pairs_needed);
  std::sort(chosen.begin(), chosen.end());

  CharacterFamily fam;
  fam.id = "odd_q" + std::to_string(q) + "_n" + std::to_string(count) + "_s" +
           std::to_string(seed);
  fam.conjugation_closed = true;
  for (int64_t k : chosen) {
    fam.members.push_back(DirichletCharacter::mod_prime(q, g, k));
    fam.members.push_back(DirichletCharacter::mod_prime(q, g, q - 1 - k));
  }
  return fam;
}

} // namespace murmur::dirichlet
