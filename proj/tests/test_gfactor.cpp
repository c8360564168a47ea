#include <cmath>
#include <string>

#include "doctest.h"
#include "smoothnum/debruijn.hpp"
#include "smoothnum/errors.hpp"
#include "smoothnum/gfactor.hpp"

using namespace smoothnum;

namespace {

const PrimeTable& primes() {
  static const PrimeTable pt = PrimeTable::sieve(1'000'000);
  return pt;
}

const RhoTable& table() {
  static const RhoTable t = build_rho_table();
  return t;
}

const ZeroList& zeros() {
  static const ZeroList z = load_zeros(std::string(SMOOTHNUM_FIXTURES) + "/zeros1e4.txt", 10000);
  return z;
}

}  // namespace

TEST_SUITE("gfactor") {

TEST_CASE("routes agree on the grid") {
  for (double y : {1e3, 1e4, 1e5}) {
    for (double re : {0.55, 0.65, 0.75, 0.85, 0.95}) {
      for (double im : {0.0, 0.1, -0.1}) {
        GBreakdown g = g_value({re, im}, y, primes());
        CHECK(std::abs(g.g_factored / g.g_direct - 1.0) <= 1e-8);
      }
    }
  }
}

TEST_CASE("four-piece identity log G1 + log G2 + log F = log zeta(s, y)") {
  Complex s = 0.8;
  double y = 1e3;
  Complex lhs = log_g1(s, y, primes()) + log_g2(primes(), s, y) + log_f_transform(s, y);
  CHECK(std::abs(lhs - partial_zeta(primes(), s, y)) <= 1e-10);
}

TEST_CASE("G is real and positive on the real axis, conjugate symmetric off it") {
  for (double s : {0.3, 0.6, 0.9}) {
    GBreakdown g = g_value(s, 1e4, primes());
    CHECK(g.g_direct.imag() == 0);
    CHECK(g.g_direct.real() > 0);
    CHECK(g.log_g1.imag() == 0);
  }
  Complex a = log_g1({0.7, 0.2}, 1e4, primes()), b = log_g1({0.7, -0.2}, 1e4, primes());
  CHECK(std::abs(a - std::conj(b)) <= 1e-14 * std::abs(a));
}

TEST_CASE("size of log G1 and G - 1 against psi(y) - y") {
  double y = 1e4, beta = 0.75;
  double psi = chebyshev_psi(primes(), y).psi;
  double main = std::pow(y, -beta) * (psi - y) / std::log(y);
  double slack = std::pow(y, 0.5 - beta);
  double g1 = log_g1(beta, y, primes()).real();
  CHECK(std::abs(g1 - main) <= 2 * std::abs(main) + slack);
  double g = g_value(beta, y, primes()).g_direct.real();
  CHECK(std::abs(g - 1 - main) <= 3 * slack / std::log(y));
}

TEST_CASE("analytic derivative of log G1") {
  for (double y : {1e3, 1e4}) {
    for (Complex s : {Complex(0.6, 0), Complex(0.8, 0.1), Complex(0.9, -0.05)}) {
      double h = 1e-5;
      Complex fd = (log_g1(s + h, y, primes()) - log_g1(s - h, y, primes())) / (2 * h);
      Complex an = log_g1_derivative(s, y, primes());
      CHECK(std::abs(fd / an - 1.0) <= 1e-6);
    }
  }
}

TEST_CASE("G tends to 1 at fixed u") {
  double prev = 1e9;
  for (double y : {1e3, 1e4, 1e5}) {
    SaddleData d = saddle(y * y, y, table());
    double dev = std::abs(g_value(d.beta, y, primes()).g_direct.real() - 1);
    CHECK(dev < prev);
    prev = dev;
  }
  CHECK(prev <= 0.05);
}

TEST_CASE("F over partial zeta is 1/G") {
  double y = 1e4;
  SaddleData d = saddle(1e12, y, table());
  Complex ratio = std::exp(log_f_transform(d.beta, y) - partial_zeta(primes(), d.beta, y));
  CHECK(std::abs(ratio * g_value(d.beta, y, primes()).g_factored - 1.0) <= 1e-9);
}

TEST_CASE("corrected prediction") {
  {
    // x = y: u = 1 and beta = 1, so the prediction is floor(x) times the Mertens ratio
    // prod_{p <= y} (1 - 1/p)^-1 / (e^gamma log y)
    double mertens = 1;
    for (std::uint32_t p : primes().primes()) {
      if (p > 1000) break;
      mertens /= 1 - 1.0 / p;
    }
    mertens /= std::exp(0.57721566490153286) * std::log(1000.5);
    CHECK(corrected_prediction(1000.5, 1000.5, primes(), table()) ==
          doctest::Approx(1000 * mertens).epsilon(1e-12));
  }
  double x = 1e8, y = 1000;
  double lam = lambda_xy(x, y, table());
  double pred = corrected_prediction(x, y, primes(), table());
  // Psi(1e8, 1000) = 11298170
  CHECK(std::abs(11298170 / pred - 1) < std::abs(11298170 / lam - 1));
  CHECK_THROWS_AS(corrected_prediction(10, 100, primes(), table()), DomainError);
}

TEST_CASE("psiover_rhs") {
  double y = 1e4, x = 1e12;
  SaddleData d = saddle(x, y, table());
  double empty = psiover_rhs(x, y, 10, zeros(), table());
  double want = 1 + std::pow(y, -d.beta) * std::sqrt(y) / ((2 * d.beta - 1) * std::log(y));
  CHECK(empty == doctest::Approx(want).epsilon(1e-14));
  double full = psiover_rhs(x, y, 1e4, zeros(), table());
  double g = g_value(d.beta, y, primes()).g_direct.real();
  // both approximate the same object; the neglected terms are O(y^{-beta} log^2 y)
  CHECK(std::abs(full - g) <= 5 * std::pow(y, -d.beta) * std::pow(std::log(y), 2) / std::log(y));
  CHECK_THROWS_AS(psiover_rhs(1e30, 100, 1e4, zeros(), table()), DomainError);
  CHECK_THROWS_AS(psiover_rhs(x, y, 2e4, zeros(), table()), RangeError);
}

TEST_CASE("domain") {
  CHECK_THROWS_AS(log_g1(-0.2, 1e3, primes()), DomainError);
  CHECK_THROWS_AS(g_value(0.5, 3, primes()), DomainError);
}

}  // TEST_SUITE
