#include "smoothnum/primes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "smoothnum/errors.hpp"
#include "smoothnum/kahan.hpp"

namespace smoothnum {

namespace {

constexpr std::uint64_t kSegmentBytes = 1u << 15;  // bits represent odd numbers

std::vector<std::uint32_t> simple_sieve(std::uint32_t n) {
  std::vector<bool> composite(n + 1, false);
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = std::uint64_t(i) * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

std::uint64_t floor_of(Real y) {
  if (!(y >= 0)) return 0;
  return static_cast<std::uint64_t>(std::floor(y));
}

void require_covered(const PrimeTable& pt, Real y) {
  if (floor_of(y) > pt.limit()) {
    throw RangeError("y = " + std::to_string(y) + " exceeds prime table limit " +
                     std::to_string(pt.limit()));
  }
}

void require_positive_real_part(Complex s) {
  if (!(s.real() > 0)) throw DomainError("Re s must be positive");
}

// Largest k with p^k <= n.
int max_power(std::uint64_t p, std::uint64_t n) {
  int k = 0;
  std::uint64_t q = 1;
  while (q <= n / p) {
    q *= p;
    ++k;
  }
  return k;
}

// Sum of w^k/k over k >= k0 until the geometric tail bound drops below 1e-18.
Complex power_tail(Complex w, int k0) {
  Real a = std::abs(w);
  if (a == 0) return 0;
  Complex term = std::pow(w, k0);
  ComplexKahanSum acc;
  Real mag = std::pow(a, k0);
  for (int k = k0;; ++k) {
    acc += term / Real(k);
    if (mag / (k * (1 - a)) < 1e-18 || mag == 0) break;
    term *= w;
    mag *= a;
  }
  return acc.value();
}

}  // namespace

PrimeTable PrimeTable::sieve(std::uint64_t limit) {
  if (limit < 2 || limit > kMaxLimit) {
    throw ResourceError("sieve limit " + std::to_string(limit) + " outside [2, 1e9]");
  }
  PrimeTable pt;
  pt.limit_ = limit;
  auto root = static_cast<std::uint32_t>(std::sqrt(double(limit)));
  while (std::uint64_t(root + 1) * (root + 1) <= limit) ++root;
  std::vector<std::uint32_t> base = simple_sieve(root);
  pt.primes_.reserve(static_cast<std::size_t>(1.1 * limit / std::log(double(limit)) + 16));
  pt.primes_.push_back(2);

  // Bit i of the segment starting at odd number lo represents lo + 2i.
  const std::uint64_t seg_odds = kSegmentBytes * 8;
  std::vector<std::uint8_t> bits(kSegmentBytes);
  std::vector<std::uint64_t> next(base.size());
  for (std::size_t i = 1; i < base.size(); ++i) {
    next[i] = std::uint64_t(base[i]) * base[i];
  }
  for (std::uint64_t lo = 3; lo <= limit; lo += 2 * seg_odds) {
    std::uint64_t hi = std::min(limit, lo + 2 * seg_odds - 1);
    std::fill(bits.begin(), bits.end(), 0);
    for (std::size_t i = 1; i < base.size(); ++i) {
      std::uint64_t p = base[i];
      std::uint64_t m = next[i];
      if (m > hi) continue;
      for (; m <= hi; m += 2 * p) {
        std::uint64_t idx = (m - lo) >> 1;
        bits[idx >> 3] |= std::uint8_t(1u << (idx & 7));
      }
      next[i] = m;
    }
    std::uint64_t count = (hi - lo) / 2 + 1;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      if (!(bits[idx >> 3] & (1u << (idx & 7)))) {
        pt.primes_.push_back(static_cast<std::uint32_t>(lo + 2 * idx));
      }
    }
  }
  return pt;
}

std::uint64_t PrimeTable::pi(std::uint64_t n) const {
  if (n > limit_) {
    throw RangeError("pi(" + std::to_string(n) + ") exceeds prime table limit " +
                     std::to_string(limit_));
  }
  if (n >= std::uint64_t(UINT32_MAX)) return primes_.size();
  return static_cast<std::uint64_t>(
      std::upper_bound(primes_.begin(), primes_.end(), static_cast<std::uint32_t>(n)) -
      primes_.begin());
}

ChebyshevValue chebyshev_psi(const PrimeTable& pt, Real y) {
  require_covered(pt, y);
  ChebyshevValue out;
  out.y = y;
  std::uint64_t n = floor_of(y);
  if (n < 2) return out;
  KahanSum<double> acc;
  for (std::uint32_t p : pt.primes()) {
    if (p > n) break;
    ++out.pi_count;
    Real lp = std::log(Real(p));
    int kmax = max_power(p, n);
    for (int k = 1; k <= kmax; ++k) acc += lp;
  }
  out.psi = acc.value();
  return out;
}

Complex partial_zeta(const PrimeTable& pt, Complex s, Real y) {
  require_positive_real_part(s);
  require_covered(pt, y);
  std::uint64_t n = floor_of(y);
  ComplexKahanSum acc;
  for (std::uint32_t p : pt.primes()) {
    if (p > n) break;
    acc += power_tail(std::exp(-s * std::log(Real(p))), 1);
  }
  return acc.value();
}

Complex prime_power_sum(const PrimeTable& pt, Complex s, Real y) {
  require_positive_real_part(s);
  require_covered(pt, y);
  std::uint64_t n = floor_of(y);
  ComplexKahanSum acc;
  for (std::uint32_t p : pt.primes()) {
    if (p > n) break;
    Complex w = std::exp(-s * std::log(Real(p)));
    Complex term = w;
    int kmax = max_power(p, n);
    for (int k = 1; k <= kmax; ++k) {
      acc += term / Real(k);
      term *= w;
    }
  }
  return acc.value();
}

Complex log_g2(const PrimeTable& pt, Complex s, Real y) {
  require_positive_real_part(s);
  require_covered(pt, y);
  std::uint64_t n = floor_of(y);
  ComplexKahanSum acc;
  for (std::uint32_t p : pt.primes()) {
    if (p > n) break;
    int k0 = std::max(2, max_power(p, n) + 1);
    acc += power_tail(std::exp(-s * std::log(Real(p))), k0);
  }
  return acc.value();
}

Complex von_mangoldt_sum(const PrimeTable& pt, Complex s, Real y) {
  require_positive_real_part(s);
  require_covered(pt, y);
  std::uint64_t n = floor_of(y);
  ComplexKahanSum acc;
  for (std::uint32_t p : pt.primes()) {
    if (p > n) break;
    Real lp = std::log(Real(p));
    Complex w = std::exp(-s * lp);
    Complex term = w;
    int kmax = max_power(p, n);
    for (int k = 1; k <= kmax; ++k) {
      acc += lp * term;
      term *= w;
    }
  }
  return acc.value();
}

}  // namespace smoothnum
