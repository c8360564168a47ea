#pragma once

#include <cstdint>
#include <vector>

#include "smoothnum/types.hpp"

namespace smoothnum {

/// Exact list of the primes <= limit.
class PrimeTable {
 public:
  static constexpr std::uint64_t kMaxLimit = 1'000'000'000;

  /// Segmented odd-only sieve. Throws ResourceError outside [2, kMaxLimit].
  static PrimeTable sieve(std::uint64_t limit);

  std::uint64_t limit() const { return limit_; }
  const std::vector<std::uint32_t>& primes() const { return primes_; }
  std::size_t size() const { return primes_.size(); }
  std::uint32_t operator[](std::size_t i) const { return primes_[i]; }

  /// Number of primes <= n. Throws RangeError when n > limit.
  std::uint64_t pi(std::uint64_t n) const;

 private:
  std::uint64_t limit_ = 0;
  std::vector<std::uint32_t> primes_;
};

struct ChebyshevValue {
  Real y = 0;
  Real psi = 0;
  std::uint64_t pi_count = 0;
};

ChebyshevValue chebyshev_psi(const PrimeTable& pt, Real y);

/// log of the partial Euler product prod_{p<=y} (1 - p^-s)^-1.
Complex partial_zeta(const PrimeTable& pt, Complex s, Real y);

/// Sum over prime powers p^k <= y of p^{-ks}/k (the Lambda(n)/(n^s log n) sum).
Complex prime_power_sum(const PrimeTable& pt, Complex s, Real y);

/// Sum over p <= y and k >= 2 with p^k > y of p^{-ks}/k.
Complex log_g2(const PrimeTable& pt, Complex s, Real y);

/// Sum over prime powers p^k <= y of log(p) p^{-ks}.
Complex von_mangoldt_sum(const PrimeTable& pt, Complex s, Real y);

}  // namespace smoothnum
