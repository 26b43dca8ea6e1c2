#include "doctest.h"

#include <cmath>
#include <complex>
#include <numeric>

#include "murmur/dirichlet.hpp"

using namespace murmur;
using dirichlet::DirichletCharacter;
using Complex = std::complex<double>;

TEST_CASE("char_value examples") {
  auto k5 = DirichletCharacter::kronecker(5);
  CHECK(k5.value(10) == Complex(0.0));
  CHECK(k5.value(7).real() == doctest::Approx(-1.0));

  auto m7 = DirichletCharacter::mod_prime(7, 3, 1);
  CHECK(m7.value(6).real() == doctest::Approx(-1.0));
  CHECK(m7.value(6).imag() == doctest::Approx(0.0));
}

TEST_CASE("parity") {
  CHECK(DirichletCharacter::kronecker(5).parity() == 0);
  CHECK(DirichletCharacter::kronecker(-4).parity() == 1);
  CHECK(DirichletCharacter::mod_prime(7, 3, 1).parity() == 1);
  CHECK(DirichletCharacter::mod_prime(7, 3, 2).parity() == 0);
}

TEST_CASE("conjugate is an involution") {
  auto k8 = DirichletCharacter::kronecker(8);
  CHECK(k8.conjugate() == k8);

  auto m7 = DirichletCharacter::mod_prime(7, 3, 1);
  CHECK(m7.conjugate().index() == 5);
  CHECK(m7.conjugate().conjugate() == m7);

  // conjugate values really are complex conjugates
  for (int64_t n = 1; n <= 21; ++n)
    CHECK(std::abs(m7.conjugate().value(n) - std::conj(m7.value(n))) < 1e-14);
}

TEST_CASE("gauss sums") {
  auto tau5 = dirichlet::gauss_sum(DirichletCharacter::kronecker(5));
  CHECK(tau5.real() == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
  CHECK(std::abs(tau5.imag()) < 1e-12);

  auto tau7 = dirichlet::gauss_sum(DirichletCharacter::mod_prime(7, 3, 1));
  CHECK(std::abs(tau7) == doctest::Approx(std::sqrt(7.0)).epsilon(1e-12));

  // |tau| = sqrt(q) across a small corpus of primitive characters
  for (int64_t D : {-8, -4, -3, 5, 8, 12, 13, 17}) {
    auto chi = DirichletCharacter::kronecker(D);
    CHECK(std::abs(dirichlet::gauss_sum(chi)) ==
          doctest::Approx(std::sqrt(double(chi.modulus()))).epsilon(1e-12));
  }
  for (int64_t k = 1; k <= 11; ++k) {
    auto chi = DirichletCharacter::mod_prime(13, 2, k);
    CHECK(std::abs(dirichlet::gauss_sum(chi)) ==
          doctest::Approx(std::sqrt(13.0)).epsilon(1e-12));
  }
}

TEST_CASE("smallest primitive roots") {
  CHECK(dirichlet::smallest_primitive_root(7) == 3);
  CHECK(dirichlet::smallest_primitive_root(5) == 2);
  CHECK(dirichlet::smallest_primitive_root(11) == 2);
  CHECK_THROWS_AS(dirichlet::smallest_primitive_root(8), DomainError);
}

TEST_CASE("multiplicativity, periodicity, orthogonality") {
  std::vector<DirichletCharacter> corpus = {
      DirichletCharacter::kronecker(5),  DirichletCharacter::mod_prime(7, 3, 1),
      DirichletCharacter::kronecker(8),  DirichletCharacter::kronecker(12),
      DirichletCharacter::kronecker(13), DirichletCharacter::mod_prime(13, 2, 5),
  };
  for (const auto& chi : corpus) {
    const int64_t q = chi.modulus();
    for (int64_t m = 1; m <= 3 * q; m += 3)
      for (int64_t n = 1; n <= 3 * q; n += 5)
        CHECK(std::abs(chi.value(m * n) - chi.value(m) * chi.value(n)) < 1e-12);
    for (int64_t n = 1; n <= 2 * q; ++n)
      CHECK(std::abs(chi.value(n + q) - chi.value(n)) < 1e-14);

    Complex total = 0.0;
    for (int64_t n = 1; n <= q; ++n) total += chi.value(n);
    CHECK(std::abs(total) < 1e-12);

    // chi(-1) = (-1)^parity
    const double want = chi.parity() == 0 ? 1.0 : -1.0;
    CHECK(chi.value(q - 1).real() == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("build_odd_family") {
  // q = 7: odd indices {1, 3, 5}; index 3 is self-conjugate and never
  // sampled, so the only pair is {1, 5}
  auto fam = dirichlet::build_odd_family(7, 2, 12345);
  REQUIRE(fam.members.size() == 2);
  CHECK(fam.members[0].index() == 1);
  CHECK(fam.members[1].index() == 5);
  CHECK(fam.conjugation_closed);

  CHECK_THROWS_AS(dirichlet::build_odd_family(7, 4, 1), DomainError);
  CHECK_THROWS_AS(dirichlet::build_odd_family(7, 3, 1), DomainError);

  auto big = dirichlet::build_odd_family(541, 40, 2024);
  REQUIRE(big.members.size() == 40);
  for (const auto& chi : big.members) CHECK(chi.parity() == 1);
  // closure: for every member the conjugate is present
  for (const auto& chi : big.members) {
    bool found = false;
    for (const auto& other : big.members)
      if (other == chi.conjugate()) found = true;
    CHECK(found);
  }

  // determinism: same seed, same family; different seed, (generically)
  // different family
  auto again = dirichlet::build_odd_family(541, 40, 2024);
  REQUIRE(again.members.size() == big.members.size());
  for (size_t i = 0; i < big.members.size(); ++i)
    CHECK(again.members[i] == big.members[i]);
}

TEST_CASE("odd family mod 2797 at full size") {
  auto fam = dirichlet::build_odd_family(2797, 526, 1);
  REQUIRE(fam.members.size() == 526);
  CHECK(fam.conjugation_closed);
  for (const auto& chi : fam.members) CHECK(chi.parity() == 1);
  // closure: members come in adjacent conjugate pairs
  for (size_t i = 0; i + 1 < fam.members.size(); i += 2)
    CHECK(fam.members[i + 1] == fam.members[i].conjugate());
}
