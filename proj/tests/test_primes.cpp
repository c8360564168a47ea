#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "smoothnum/errors.hpp"
#include "smoothnum/primes.hpp"

using namespace smoothnum;

TEST_SUITE("primes") {

TEST_CASE("sieve agrees with trial division") {
  PrimeTable pt = PrimeTable::sieve(200000);
  std::size_t k = 0;
  for (std::uint64_t n = 2; n <= 200000; ++n) {
    if (!oracle::is_prime(n)) continue;
    REQUIRE(k < pt.size());
    CHECK(pt[k] == n);
    ++k;
  }
  CHECK(k == pt.size());
}

TEST_CASE("prime counts at powers of ten") {
  PrimeTable pt = PrimeTable::sieve(100'000'000);
  CHECK(pt.pi(10) == 4);
  CHECK(pt.pi(1000) == 168);
  CHECK(pt.pi(1'000'000) == 78498);
  CHECK(pt.pi(100'000'000) == 5761455);
  CHECK(pt.pi(1) == 0);
  CHECK_THROWS_AS(pt.pi(100'000'001), RangeError);
}

TEST_CASE("sieve limits") {
  CHECK(PrimeTable::sieve(2).size() == 1);
  CHECK(PrimeTable::sieve(3).size() == 2);
  CHECK_THROWS_AS(PrimeTable::sieve(1), ResourceError);
  CHECK_THROWS_AS(PrimeTable::sieve(PrimeTable::kMaxLimit + 1), ResourceError);
}

TEST_CASE("chebyshev psi") {
  PrimeTable pt = PrimeTable::sieve(100000);
  for (std::uint64_t y : {2u, 10u, 97u, 1000u, 12345u}) {
    ChebyshevValue c = chebyshev_psi(pt, double(y));
    CHECK(c.psi == doctest::Approx(oracle::chebyshev_brute(y)).epsilon(1e-13));
    CHECK(c.pi_count == pt.pi(y));
  }
  CHECK(chebyshev_psi(pt, 1.5).psi == 0);
  CHECK(chebyshev_psi(pt, 10.9).psi == doctest::Approx(std::log(2520.0)).epsilon(1e-15));
  CHECK_THROWS_AS(chebyshev_psi(pt, 200000), RangeError);
}

TEST_CASE("log-sum decomposition: partial zeta = prime-power sum + tail") {
  PrimeTable pt = PrimeTable::sieve(100000);
  for (Complex s : {Complex(0.6, 0), Complex(0.8, 0.1), Complex(1.5, -20), Complex(0.55, 3)}) {
    for (double y : {10.0, 1000.0, 1e5}) {
      Complex lhs = partial_zeta(pt, s, y);
      Complex rhs = prime_power_sum(pt, s, y) + log_g2(pt, s, y);
      CHECK(std::abs(lhs - rhs) <= 1e-13 * std::abs(lhs));
    }
  }
}

TEST_CASE("partial zeta against the direct Euler product") {
  PrimeTable pt = PrimeTable::sieve(1000);
  Complex s(0.7, 2.5);
  Complex prod = 1;
  for (auto p : pt.primes()) prod /= 1.0 - std::exp(-s * std::log(double(p)));
  Complex lz = partial_zeta(pt, s, 1000);
  CHECK(std::abs(std::exp(lz) - prod) <= 1e-12 * std::abs(prod));
  Complex conj = partial_zeta(pt, std::conj(s), 1000);
  CHECK(std::abs(conj - std::conj(lz)) <= 1e-14 * std::abs(lz));
}

TEST_CASE("prime-power sum against a direct double loop") {
  PrimeTable pt = PrimeTable::sieve(5000);
  double s = 0.8, y = 5000;
  double direct = 0;
  for (auto p : pt.primes()) {
    int k = 1;
    for (double q = p; q <= y; q *= p, ++k) direct += std::pow(q, -s) / k;
  }
  CHECK(prime_power_sum(pt, s, y).real() == doctest::Approx(direct).epsilon(1e-13));
}

TEST_CASE("log_g2 only counts powers beyond y") {
  PrimeTable pt = PrimeTable::sieve(100);
  double s = 0.9, y = 100;
  double direct = 0;
  for (auto p : pt.primes()) {
    for (int k = 2; k < 200; ++k) {
      double lq = k * std::log(double(p));
      if (lq > std::log(y)) direct += std::exp(-s * lq) / k;
    }
  }
  CHECK(log_g2(pt, s, y).real() == doctest::Approx(direct).epsilon(1e-13));
  CHECK(log_g2(pt, {s, 1}, y).imag() != 0);
}

TEST_CASE("von Mangoldt sum is minus the s-derivative of the prime-power sum") {
  PrimeTable pt = PrimeTable::sieve(10000);
  Complex s(0.75, 0.4);
  double h = 1e-5;
  Complex fd = (prime_power_sum(pt, s + h, 1e4) - prime_power_sum(pt, s - h, 1e4)) / (2 * h);
  Complex an = von_mangoldt_sum(pt, s, 1e4);
  CHECK(std::abs(fd + an) <= 1e-8 * std::abs(an));
  CHECK(von_mangoldt_sum(pt, 0.0 + 1e-300, 100.0).real() ==
        doctest::Approx(chebyshev_psi(pt, 100).psi).epsilon(1e-12));
}

TEST_CASE("domain errors") {
  PrimeTable pt = PrimeTable::sieve(100);
  CHECK_THROWS_AS(partial_zeta(pt, {0, 1}, 50), DomainError);
  CHECK_THROWS_AS(log_g2(pt, -0.5, 50), DomainError);
  CHECK_THROWS_AS(prime_power_sum(pt, 0.5, 101), RangeError);
}

}  // TEST_SUITE
