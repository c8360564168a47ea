#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <string>

#include "doctest.h"
#include "oracles.hpp"
#include "smoothnum/errors.hpp"
#include "smoothnum/primes.hpp"
#include "smoothnum/zeta.hpp"

using namespace smoothnum;

namespace {

const std::string kFixture = std::string(SMOOTHNUM_FIXTURES) + "/zeros1e4.txt";

std::string write_temp(const std::string& name, const std::string& body) {
  std::string path = std::string("/tmp/smoothnum_test_") + name;
  std::ofstream(path) << body;
  return path;
}

void check_close(Complex got, Complex want, double rel) {
  CHECK(std::abs(got - want) <= rel * std::abs(want));
}

}  // namespace

TEST_SUITE("zeta") {

TEST_CASE("zeta at reference points") {
  check_close(riemann_zeta(2.0), 1.6449340668482264365, 1e-13);
  check_close(riemann_zeta(0.0), -0.5, 1e-13);
  check_close(riemann_zeta(0.5), -1.4603545088095868129, 1e-13);
  check_close(riemann_zeta({0.5, 10}), {1.5448952202967527669, -0.11533646527127337544}, 1e-12);
  check_close(riemann_zeta({0.3, -7}), {1.0171314988950936839, -0.43944400689634059683}, 1e-12);
  check_close(riemann_zeta({2, 50}), {0.77395093315669076018, 0.12594471582633419672}, 1e-12);
  check_close(zeta_derivative({0.7, 3}), {0.19299596827129439248, -0.060826397117806588708}, 1e-11);
  CHECK_THROWS_AS(riemann_zeta(1.0), PoleError);
  check_close(zeta_times_s_minus_1(1.0), 1.0, 1e-15);
}

TEST_CASE("zeta vanishes at the first tabulated ordinate") {
  CHECK(std::abs(riemann_zeta({0.5, 14.134725141734693})) < 1e-10);
  CHECK(std::abs(riemann_zeta({0.5, 14.134725})) < 1e-4);
}

TEST_CASE("zeta conjugate symmetry on random points of the strip") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> re(-1, 4), im(-300, 300);
  for (int i = 0; i < 100; ++i) {
    Complex s(re(rng), im(rng));
    Complex a = riemann_zeta(s), b = riemann_zeta(std::conj(s));
    CHECK(std::abs(a - std::conj(b)) <= 1e-14 * std::abs(a));
  }
}

TEST_CASE("log((s-1) zeta(s)) branch") {
  check_close(log_zeta_times_s_minus_1(2.0), std::log(1.6449340668482264365), 1e-14);
  CHECK(log_zeta_times_s_minus_1(0.75).imag() == 0);
  Complex up = log_zeta_times_s_minus_1({0.75, 0.5});
  Complex down = log_zeta_times_s_minus_1({0.75, -0.5});
  CHECK(std::abs(up - std::conj(down)) <= 1e-14 * std::abs(up));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> re(0.05, 3), im(-200, 200);
  for (int i = 0; i < 50; ++i) {
    Complex s(re(rng), im(rng));
    Complex l = log_zeta_times_s_minus_1(s);
    Complex v = zeta_times_s_minus_1(s);
    CHECK(std::abs(std::exp(l) - v) <= 1e-9 * std::abs(v));
  }
  // continuity of the branch along a vertical path
  Complex prev = log_zeta_times_s_minus_1({0.6, 0});
  for (double t = 0.05; t < 40; t += 0.05) {
    Complex cur = log_zeta_times_s_minus_1({0.6, t});
    CHECK(std::abs(cur.imag() - prev.imag()) < 1.0);
    prev = cur;
  }
  CHECK_THROWS_AS(log_zeta_times_s_minus_1({0.5, 14.134725141734693}), SingularityError);
  CHECK_THROWS_AS(log_zeta_times_s_minus_1({-0.1, 3}), DomainError);
}

TEST_CASE("load_zeros: small files") {
  ZeroList two = load_zeros(write_temp("two.txt", "14.134725\n21.022040\n"), 20);
  CHECK(two.size() == 1);
  CHECK(two.height() == 20);
  ZeroList empty = load_zeros(write_temp("empty.txt", ""), 10);
  CHECK(empty.empty());
  CHECK(empty.height() == 10);
  ZeroList all = load_zeros(write_temp("two.txt", "14.134725\n21.022040\n"));
  CHECK(all.size() == 2);
  CHECK(all.height() == 21.022040);
}

TEST_CASE("load_zeros: malformed files name the line") {
  auto line_of = [](const std::string& body) {
    try {
      load_zeros(write_temp("bad.txt", body), 0);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1L;
  };
  CHECK(line_of("14.134725\n25.01\n21.02\n") == 3);
  CHECK(line_of("14.134725\nabc\n") == 2);
  CHECK(line_of("14.134725\n21.02x\n") == 2);
  CHECK(line_of("14.134725\n-3\n") == 2);
  CHECK(line_of("14.134725\n\n21.022040\n") == 2);
  CHECK(line_of("15.0\n") == 1);
  CHECK_THROWS_AS(load_zeros("/nonexistent/zeros.txt"), IoError);
}

TEST_CASE("load_zeros: counts against the fixture") {
  ZeroList z = load_zeros(kFixture);
  REQUIRE(z.size() >= 10000);
  // the fixture stores ten decimals
  CHECK(std::abs(z.gammas()[0] - 14.134725141734693) <= 1e-10);
  CHECK(std::abs(z.gammas()[1] - 21.022039638771555) <= 1e-10);
  CHECK(std::abs(z.gammas()[99] - 236.52422966581620) <= 1e-10);
  // the 100th ordinate is 236.524..., so height 236 holds 99 of the first 100
  ZeroList first100 = z.first(100);
  CHECK(first100.truncated(236).size() == 99);
  CHECK(first100.count_up_to(236.6) == 100);
  CHECK(z.count_up_to(10000) == 10142);
  for (double t : {100.0, 1000.0, 5000.0, 10000.0}) {
    CHECK(std::abs(double(z.count_up_to(t)) - riemann_von_mangoldt(t)) < 3);
  }
}

TEST_CASE("zero_sum") {
  ZeroList z = load_zeros(kFixture, 10000);
  CHECK(zero_sum(z, 1e4, 0.0, 10) == Complex(0, 0));
  Complex real_case = zero_sum(z, 1e4, 0.75, 1000);
  CHECK(real_case.imag() == 0);
  CHECK_THROWS_AS(zero_sum(z, 1e4, 0.0, 20000), RangeError);

  // complex s0 takes the pairwise route; its real-axis limit must agree
  Complex near = zero_sum(z, 1e4, {0.75, 1e-12}, 1000);
  CHECK(std::abs(near - real_case) <= 1e-9 * std::abs(real_case));

  // triangle-inequality bound between s0 = beta and s0 = 0
  double beta = 0.8, bound = 0;
  ZeroList low = z.truncated(1000);
  for (double g : low.gammas()) bound += 2 * beta * 100 / (g * (g - beta));
  CHECK(std::abs(zero_sum(z, 1e4, beta, 1000) - zero_sum(z, 1e4, 0.0, 1000)) <= bound);

  // explicit formula at y = 10^4
  PrimeTable pt = PrimeTable::sieve(10000);
  double psi = chebyshev_psi(pt, 1e4).psi;
  double resid = psi - 1e4 + zero_sum(z, 1e4, 0.0, 1e4).real();
  CHECK(std::abs(resid) <= 100);
}

TEST_CASE("Riemann-von Mangoldt main term") {
  CHECK(riemann_von_mangoldt(100) == doctest::Approx(29.0).epsilon(0.05));
}

}  // TEST_SUITE
