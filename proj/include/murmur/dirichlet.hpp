#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "murmur/errors.hpp"

namespace murmur::dirichlet {

using Complex = std::complex<double>;

enum class CharKind { Kronecker, ModPrime };

// Primitive Dirichlet character in one of the two forms the families use:
// the real Kronecker character of a fundamental discriminant D (modulus |D|),
// or a character mod an odd prime q given by a primitive root g and an index
// k, with chi(g) = exp(2*pi*i*k/(q-1)). Both are nontrivial and primitive by
// construction.
class DirichletCharacter {
public:
  static DirichletCharacter kronecker(int64_t D);
  static DirichletCharacter mod_prime(int64_t q, int64_t g, int64_t index);

  CharKind kind() const { return kind_; }
  int64_t modulus() const { return q_; }
  int64_t discriminant() const { return D_; } // Kronecker kind only
  int64_t generator() const { return g_; }    // ModPrime kind only
  int64_t index() const { return index_; }    // ModPrime kind only

  // 0 = even (chi(-1) = 1), 1 = odd.
  int parity() const { return parity_; }
  bool is_real() const { return kind_ == CharKind::Kronecker; }

  Complex value(int64_t n) const;
  DirichletCharacter conjugate() const;

  // Stable identifier, e.g. "K5" or "M541g2k37"; used as ZeroList object_id.
  std::string id() const;

  friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
    return a.kind_ == b.kind_ && a.q_ == b.q_ && a.D_ == b.D_ && a.index_ == b.index_;
  }

private:
  DirichletCharacter() = default;

  CharKind kind_ = CharKind::Kronecker;
  int64_t q_ = 0;
  int64_t D_ = 0;
  int64_t g_ = 0;
  int64_t index_ = 0;
  int parity_ = 0;
  // ModPrime: dlog_[n] = j with n = g^j mod q; shared, immutable after build.
  std::shared_ptr<const std::vector<int32_t>> dlog_;
};

// tau(chi) = sum_{a=1}^{q} chi(a) e(a/q).
Complex gauss_sum(const DirichletCharacter& chi);

// Least g >= 2 generating (Z/qZ)^* for odd prime q.
int64_t smallest_primitive_root(int64_t q);

struct CharacterFamily {
  std::string id;
  std::vector<DirichletCharacter> members;
  bool conjugation_closed = false;
};

// Seeded sample of count/2 conjugate pairs of odd characters mod q, closed
// under conjugation. Sampling: splitmix64 stream from `seed` driving a
// Fisher-Yates draw over the conjugate-pair pool (self-conjugate odd
// characters are never sampled since count is even). Bit-reproducible.
CharacterFamily build_odd_family(int64_t q, int64_t count, uint64_t seed);

// splitmix64: the documented PRNG behind seeded family sampling.
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

} // namespace murmur::dirichlet
