#pragma once

#include <cstdint>
#include <vector>

#include "smoothnum/primes.hpp"
#include "smoothnum/types.hpp"

namespace smoothnum {

/// Limits on psi_exact outside the prime-counting regime (y*y >= x covered by the table).
/// Defaults may be overridden by SMOOTHNUM_PSI_MAX_X and SMOOTHNUM_PSI_MAX_Y.
struct PsiEnvelope {
  std::uint64_t max_x;
  std::uint64_t max_y;
};

PsiEnvelope psi_envelope();

/// Knobs of the tree/sieve algorithm. Zero selects the automatic value.
struct PsiTuning {
  std::uint64_t sieve_limit = 0;  // leaves are nodes with value <= sieve_limit
  std::uint64_t leaf_budget = 0;  // maximum leaves held in memory per sieve pass
};

/// Number of n <= x whose prime factors are all <= y. Needs primes up to y
/// (and up to x for the prime-counting shortcut, which is skipped otherwise).
std::uint64_t psi_exact(std::uint64_t x, std::uint64_t y, const PrimeTable& pt);
std::uint64_t psi_exact(std::uint64_t x, std::uint64_t y, const PrimeTable& pt,
                        const PsiTuning& tuning);

/// Psi(x,y) - [Psi(x,z) - sum_{y<p<=z} Psi(x/p, p)]. Needs primes up to z.
std::int64_t buchstab_residual_psi(std::uint64_t x, std::uint64_t y, std::uint64_t z,
                                   const PrimeTable& pt);

struct AlphaSum {
  Real value = 0;
  Real error_bound = 0;
};

/// alpha_y(n) for 0 <= n <= x (index 0 unused), from
/// sum alpha_y(n) n^-s = exp(sum_{p^k <= y} p^{-ks}/k).
std::vector<Real> alpha_values(std::uint64_t x, std::uint64_t y, const PrimeTable& pt);

/// sum_{n <= x} alpha_y(n). Throws ResourceError for x > 1e7.
AlphaSum alpha_summatory(std::uint64_t x, std::uint64_t y, const PrimeTable& pt);

}  // namespace smoothnum
