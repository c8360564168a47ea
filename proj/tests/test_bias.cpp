#include <cmath>
#include <string>

#include "doctest.h"
#include "smoothnum/bias.hpp"
#include "smoothnum/debruijn.hpp"
#include "smoothnum/errors.hpp"
#include "smoothnum/gfactor.hpp"
#include "smoothnum/philox.hpp"

using namespace smoothnum;

namespace {

const PrimeTable& primes() {
  static const PrimeTable pt = PrimeTable::sieve(10'000'000);
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

BiasConfig config(double beta0, std::uint64_t n) {
  BiasConfig c;
  c.beta0 = beta0;
  c.seed = 20240601;
  c.n_samples = n;
  return c;
}

}  // namespace

TEST_SUITE("bias") {

TEST_CASE("Philox4x32-10 known-answer vectors") {
  auto a = philox4x32_10({0, 0, 0, 0}, {0, 0});
  CHECK(a == PhiloxCounter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  auto b = philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                         {0xffffffffu, 0xffffffffu});
  CHECK(b == PhiloxCounter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  auto c = philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                         {0xa4093822u, 0x299f31d0u});
  CHECK(c == PhiloxCounter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("turn_cos matches std::cos") {
  double worst = 0;
  for (std::uint64_t p = 0; p < (1ull << 32); p += 999983) {
    long double turn = 6.283185307179586476925286766559L / 4294967296.0L;
    double want = double(std::cos(static_cast<long double>(p) * turn));
    worst = std::max(worst, std::abs(turn_cos(std::uint32_t(p)) - want));
  }
  CHECK(worst < 4e-16);
}

TEST_CASE("x(y)") {
  CHECK(x_of_y(1e4, 0.75) == doctest::Approx(36).epsilon(1e-14));
  CHECK(x_of_y(1, 0.75) == 0);
  double log_x = x_of_y(1e4, 0.75);
  SaddleData d = saddle_log(log_x, std::log(1e4), table());
  CHECK(d.beta == doctest::Approx(0.75).epsilon(1e-10));
  CHECK_THROWS_AS(x_of_y(100, 0.5), DomainError);
  CHECK_THROWS_AS(x_of_y(100, 1.0), DomainError);
}

TEST_CASE("normalized deviation is its defining expression") {
  DeviationPoint d = deviation_point(2000, 0.8, primes(), table());
  double want = (double(d.psi) / d.lambda - 1) * std::pow(2000, 0.3) * std::log(2000);
  CHECK(d.deviation == doctest::Approx(want).epsilon(1e-12));
  CHECK(normalized_deviation(2000, 0.8, primes(), table()) == d.deviation);
  CHECK(std::isfinite(d.deviation));
  CHECK_THROWS_AS(deviation_point(1e6, 0.75, primes(), table()), ResourceError);
}

TEST_CASE("model_rhs") {
  ZeroList none(std::vector<Real>{}, 100);
  CHECK(model_rhs(1e4, 0.75, 100, none) == 2);
  CHECK(model_rhs(1e4, 0.6, 100, none) == doctest::Approx(5).epsilon(1e-15));
  // the psiover route rescaled: (psiover - 1) y^{beta0 - 1/2} log y
  double y = 1e4, beta0 = 0.75;
  double x = std::exp(x_of_y(y, beta0));
  double via_psiover = (psiover_rhs(x, y, 1000, zeros(), table()) - 1) *
                       std::pow(y, beta0 - 0.5) * std::log(y);
  CHECK(model_rhs(y, beta0, 1000, zeros()) == doctest::Approx(via_psiover).epsilon(1e-6));
  // oscillating part averages out over log y
  double sum = 0;
  const int n = 4000;
  for (int i = 0; i < n; ++i) {
    double ly = std::log(1e3) + (std::log(1e5) - std::log(1e3)) * (i + 0.5) / n;
    sum += model_rhs(std::exp(ly), beta0, 1000, zeros()) - 2;
  }
  CHECK(std::abs(sum / n) < 0.05);
  CHECK_THROWS_AS(model_rhs(y, beta0, 2e4, zeros()), RangeError);
}

TEST_CASE("li_density without zeros is 1") {
  ZeroList none(std::vector<Real>{}, 0);
  DensityEstimate e = li_density(config(0.75, 1000), none);
  CHECK(e.density == 1);
  CHECK(e.std_error == 0);
}

TEST_CASE("li_density is reproducible across runs and thread counts") {
  ZeroList z = zeros().first(300);
  BiasConfig c = config(0.6, 20000);
  DensityEstimate a = li_density(c, z);
  DensityEstimate b = li_density(c, z);
  c.threads = 3;
  DensityEstimate t = li_density(c, z);
  CHECK(a.density == b.density);
  CHECK(a.density == t.density);
  CHECK(a.std_error == t.std_error);
  // every sample is positive here, so seed sensitivity shows in the histogram
  SampleHistogram h1, h2;
  c.threads = 1;
  li_density(c, z, DensityMode::SmoothBias, &h1);
  c.seed += 1;
  li_density(c, z, DensityMode::SmoothBias, &h2);
  CHECK(h1.counts != h2.counts);
  CHECK(a.density - 3 * a.std_error >= -0.01);
  CHECK(a.density + 3 * a.std_error <= 1.01);
}

TEST_CASE("li_density histogram counts every sample") {
  ZeroList z = zeros().first(100);
  SampleHistogram h;
  h.lo = -4;
  h.hi = 8;
  DensityEstimate e = li_density(config(0.75, 5000), z, DensityMode::SmoothBias, &h);
  std::uint64_t total = 0;
  for (auto c : h.counts) total += c;
  CHECK(total == 5000);
  CHECK(e.n_samples == 5000);
}

TEST_CASE("li_density increases with beta0") {
  ZeroList z = zeros().first(200);
  double d6 = li_density(config(0.6, 1'000'000), z).density;
  double d75 = li_density(config(0.75, 1'000'000), z).density;
  double d9 = li_density(config(0.9, 1'000'000), z).density;
  CHECK(d6 <= d75);
  CHECK(d75 <= d9);
  CHECK(d6 > 0.5);
}

TEST_CASE("li_density rejects bad configurations") {
  CHECK_THROWS_AS(li_density(config(0.75, 999), zeros()), DomainError);
  CHECK_THROWS_AS(li_density(config(0.45, 1000), zeros()), DomainError);
  BiasConfig c = config(0.75, 1000);
  c.t_max = 1e5;
  CHECK_THROWS_AS(li_density(c, zeros()), RangeError);
}

TEST_CASE("empirical logarithmic density") {
  EmpiricalDensity one = empirical_log_density({2000}, 0.75, 1000, zeros(), primes(), table());
  CHECK((one.positive.density == 0 || one.positive.density == 1));
  // x(5e4) = exp(55.8) lies outside the exact-count envelope
  CHECK_THROWS_AS(empirical_log_density({1e3, 5e4}, 0.75, 1000, zeros(), primes(), table()),
                  ResourceError);
  std::vector<double> grid;
  for (int i = 0; i < 8; ++i) grid.push_back(1e3 * std::pow(10.0, i / 7.0));
  EmpiricalDensity e = empirical_log_density(grid, 0.75, 1e4, zeros(), primes(), table());
  CHECK(e.points.size() == 8);
  CHECK(e.positive.density > 0.5);
  CHECK(e.sign_agreement >= 0.6);
}

}  // TEST_SUITE
