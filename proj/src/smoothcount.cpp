#include "smoothnum/smoothcount.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

#include "smoothnum/errors.hpp"
#include "smoothnum/kahan.hpp"

namespace smoothnum {

namespace {

constexpr std::uint64_t kDefaultMaxX = 200'000'000'000'000'000ull;  // 2e17
constexpr std::uint64_t kDefaultMaxY = 100'000;
constexpr std::uint64_t kHardMaxX = 1ull << 60;
constexpr std::uint64_t kMaxSieveLimit = 1ull << 42;
constexpr std::uint64_t kDefaultLeafBudget = 16'000'000;

// Smoothness is decided from a sum of floor(kLogScale * log p) over the prime
// powers dividing n. A smooth n loses less than one unit per prime factor
// (at most 44 below 2^44), a non-smooth n misses at least kLogScale*log 3.
constexpr double kLogScale = 1024.0;
constexpr int kSlack = 64;
constexpr std::uint64_t kThresholdBlock = 4096;
constexpr std::uint64_t kSegment = 1u << 16;
// Primes up to 13 enter every segment through a copied periodic pattern.
constexpr std::uint32_t kWheelMaxPrime = 13;
constexpr std::uint64_t kWheelPeriod = 3 * 5 * 7 * 11 * 13;

std::uint64_t env_or(const char* name, std::uint64_t fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  double v = 0;
  const char* end = raw + std::strlen(raw);
  auto [ptr, ec] = std::from_chars(raw, end, v);
  if (ec != std::errc() || ptr != end || !(v >= 1)) {
    throw ParseError(std::string("invalid value for ") + name + ": " + raw, 0);
  }
  return v >= double(kHardMaxX) ? kHardMaxX : static_cast<std::uint64_t>(v);
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(double(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Number of powers of two <= w, including 1.
std::uint64_t psi_two(std::uint64_t w) { return std::bit_width(w); }

// sum of floor(v/q) over primes q in (lo, hi]; requires hi <= pt.limit().
std::uint64_t sum_quotients_over_primes(std::uint64_t v, std::uint64_t lo, std::uint64_t hi,
                                        const PrimeTable& pt) {
  std::uint64_t total = 0;
  std::uint64_t q = lo + 1;
  std::uint64_t below = pt.pi(lo);
  while (q <= hi) {
    std::uint64_t t = v / q;
    if (t == 0) break;
    std::uint64_t qmax = std::min(hi, v / t);
    std::uint64_t upto = pt.pi(qmax);
    total += t * (upto - below);
    below = upto;
    q = qmax + 1;
  }
  return total;
}

// Valid when y*y >= v: a non-smooth n <= v has exactly one prime factor above y.
std::uint64_t psi_by_prime_counting(std::uint64_t v, std::uint64_t y, const PrimeTable& pt) {
  if (y >= v) return v;
  return v - sum_quotients_over_primes(v, y, v, pt);
}

struct PrimePower {
  std::uint64_t q;
  std::uint64_t next;
  std::uint16_t weight;
  std::uint16_t index;
  bool is_prime;
};

// Counts Psi(x, p_{K-1}) via the recursion Psi(v,k) = 1 + sum_{j<=k} Psi(v/p_j, j).
// Nodes with v > Z are expanded; nodes with v <= Z are answered offline by
// one ascending sieve over [1, Z] that tracks the largest prime index of every
// smooth n and a prefix structure over that index.
class TreeSieve {
 public:
  TreeSieve(std::uint64_t x, const std::vector<std::uint32_t>& primes, std::size_t k,
            std::uint64_t z, std::uint64_t budget)
      : x_(x), p_(primes.begin(), primes.begin() + k), z_(z), budget_(budget) {}

  std::uint64_t run() {
    std::uint64_t total = 0;
    std::vector<std::uint64_t> histogram(kBuckets, 0);
    bool single_pass = true;
    walk(1, z_ + 1, [&](std::uint64_t w, std::uint32_t j) {
      ++histogram[bucket(w)];
      if (single_pass) {
        if (leaves_.size() < budget_) {
          leaves_.push_back(pack(w, j));
        } else {
          single_pass = false;
          leaves_.clear();
          leaves_.shrink_to_fit();
        }
      }
    }, &total);

    init_sieve();
    if (single_pass) {
      std::uint64_t hi = leaves_.empty() ? 1 : max_leaf() + 1;
      total += sieve_pass(hi);
      return total;
    }
    std::size_t b = 0;
    while (b < kBuckets) {
      std::uint64_t in_pass = 0;
      std::size_t e = b;
      while (e < kBuckets && (e == b || in_pass + histogram[e] <= budget_)) in_pass += histogram[e++];
      std::uint64_t lo = std::max<std::uint64_t>(1, bucket_start(b));
      std::uint64_t hi = e == kBuckets ? z_ + 1 : bucket_start(e);
      if (in_pass > 0) {
        leaves_.clear();
        leaves_.reserve(in_pass);
        walk(lo, hi, [&](std::uint64_t w, std::uint32_t j) { leaves_.push_back(pack(w, j)); },
             nullptr);
        total += sieve_pass(hi);
      }
      b = e;
    }
    return total;
  }

 private:
  static constexpr std::size_t kBuckets = 4096;

  struct Node {
    std::uint64_t v;
    std::uint32_t k;
  };

  static std::uint64_t pack(std::uint64_t w, std::uint32_t j) { return (w << 20) | j; }

  std::size_t bucket(std::uint64_t w) const {
    return static_cast<std::size_t>((static_cast<unsigned __int128>(w) * kBuckets) / (z_ + 1));
  }
  std::uint64_t bucket_start(std::size_t b) const {
    // smallest w with bucket(w) >= b
    auto num = static_cast<unsigned __int128>(b) * (z_ + 1);
    return static_cast<std::uint64_t>((num + kBuckets - 1) / kBuckets);
  }

  std::uint64_t max_leaf() const {
    std::uint64_t m = 0;
    for (auto l : leaves_) m = std::max(m, l >> 20);
    return m;
  }

  // Index of the first prime (among p_0..p_k) greater than bound.
  std::uint32_t count_le(std::uint64_t bound, std::uint32_t k) const {
    auto it = std::upper_bound(p_.begin(), p_.begin() + k + 1, bound,
                               [](std::uint64_t b, std::uint32_t p) { return b < p; });
    return static_cast<std::uint32_t>(it - p_.begin());
  }

  // Emits every leaf (w, j) with lo <= w < hi, 1 <= j, p_j < w. With a total
  // pointer, also adds internal-node ones and directly countable leaves.
  template <typename Emit>
  void walk(std::uint64_t lo, std::uint64_t hi, Emit&& emit, std::uint64_t* total) {
    std::vector<Node> stack;
    auto root_k = static_cast<std::uint32_t>(p_.size() - 1);
    if (x_ <= z_) {
      leaf_range(x_, root_k, lo, hi, emit, total, true);
      return;
    }
    stack.push_back({x_, root_k});
    while (!stack.empty()) {
      Node node = stack.back();
      stack.pop_back();
      if (total) ++*total;
      std::uint32_t j_int = count_le(node.v / (z_ + 1), node.k);
      for (std::uint32_t j = 0; j < j_int; ++j) {
        std::uint64_t w = node.v / p_[j];
        if (j == 0) {
          if (total) *total += psi_two(w);
        } else {
          stack.push_back({w, j});
        }
      }
      if (j_int <= node.k) leaf_children(node.v, node.k, j_int, lo, hi, emit, total);
    }
  }

  template <typename Emit>
  void leaf_children(std::uint64_t v, std::uint32_t k, std::uint32_t j_begin, std::uint64_t lo,
                     std::uint64_t hi, Emit& emit, std::uint64_t* total) {
    std::uint32_t j_end = k + 1;
    if (!total) {
      // restrict to lo <= v/p < hi, i.e. v/hi < p <= v/lo
      j_begin = std::max(j_begin, count_le(v / hi, k));
      j_end = std::min(j_end, count_le(v / lo, k));
    }
    for (std::uint32_t j = j_begin; j < j_end; ++j) {
      std::uint64_t w = v / p_[j];
      if (j == 0) {
        if (total) *total += psi_two(w);
      } else if (p_[j] >= w) {
        if (total) *total += w;
      } else {
        emit(w, j);
      }
    }
  }

  template <typename Emit>
  void leaf_range(std::uint64_t w, std::uint32_t j, std::uint64_t lo, std::uint64_t hi,
                  Emit& emit, std::uint64_t* total, bool) {
    if (j == 0) {
      if (total) *total += psi_two(w);
    } else if (p_[j] >= w) {
      if (total) *total += w;
    } else if (w >= lo && w < hi) {
      emit(w, j);
    }
  }

  void init_sieve() {
    cursor_ = 1;
    counts_.assign(p_.size(), 0);
    blocks_.assign(p_.size() / 32 + 1, 0);
    powers_.clear();
    wheel_.assign(kWheelPeriod + kSegment, 0);
    for (std::size_t j = 1; j < p_.size(); ++j) {
      std::uint64_t p = p_[j];
      auto weight = static_cast<std::uint16_t>(std::floor(kLogScale * std::log(double(p))));
      if (p <= kWheelMaxPrime) {
        for (std::size_t r = 0; r < wheel_.size(); r += p) {
          wheel_[r] = (((wheel_[r] & 0xFFFFu) + weight) & 0xFFFFu) | (std::uint32_t(j) << 16);
        }
      }
      for (std::uint64_t q = p; q <= z_; q *= p) {
        if (q != p || p > kWheelMaxPrime) {
          powers_.push_back({q, q, weight, static_cast<std::uint16_t>(j), q == p});
        }
        if (q > z_ / p) break;
      }
    }
    cell_.assign(kSegment, 0);
    smooth_.assign(kThresholdBlock, 0);
    threshold_block_ = UINT64_MAX;
  }

  std::uint64_t prefix(std::uint32_t j) const {
    std::uint64_t s = 0;
    std::uint32_t b = j >> 5;
    for (std::uint32_t i = 0; i < b; ++i) s += blocks_[i];
    for (std::uint32_t i = b << 5; i <= j; ++i) s += counts_[i];
    return s;
  }

  int threshold(std::uint64_t n) {
    if (n < 2 * kThresholdBlock) {
      return static_cast<int>(std::floor(kLogScale * std::log(double(n)))) - kSlack;
    }
    std::uint64_t blk = n / kThresholdBlock;
    if (blk != threshold_block_) {
      threshold_block_ = blk;
      threshold_value_ =
          static_cast<int>(std::floor(kLogScale * std::log(double(blk * kThresholdBlock)))) -
          kSlack;
    }
    return threshold_value_;
  }

  // Processes n in [from, to) of the current segment starting at seg_lo.
  void scan(std::uint64_t from, std::uint64_t to, std::uint64_t seg_lo) {
    const int two = static_cast<int>(std::floor(kLogScale * std::log(2.0)));
    std::uint64_t n = from;
    while (n < to) {
      std::uint64_t stop = n < 2 * kThresholdBlock ? n + 1
                                                   : std::min(to, (n / kThresholdBlock + 1) * kThresholdBlock);
      stop = std::min(stop, to);
      int thr = threshold(n);
      std::uint32_t* out = smooth_.data();
      std::size_t found = 0;
      for (; n < stop; ++n) {
        std::uint32_t c = cell_[n - seg_lo];
        int s = static_cast<int>(c & 0xFFFFu) + std::countr_zero(n) * two;
        out[found] = c >> 16;
        found += s >= thr;
      }
      for (std::size_t i = 0; i < found; ++i) {
        ++counts_[out[i]];
        ++blocks_[out[i] >> 5];
      }
    }
  }

  // Sieves [cursor_, hi) answering all loaded leaves, which lie in that range.
  // LSD radix sort of the packed leaves on their w field.
  void sort_leaves() {
    if (leaves_.size() < 2) return;
    constexpr int kDigit = 11;
    constexpr std::size_t kRadix = std::size_t(1) << kDigit;
    int bits = std::bit_width(max_leaf());
    std::vector<std::uint64_t> tmp(leaves_.size());
    std::vector<std::size_t> offsets(kRadix);
    for (int shift = 20; shift < 20 + bits; shift += kDigit) {
      std::fill(offsets.begin(), offsets.end(), 0);
      for (auto l : leaves_) ++offsets[(l >> shift) & (kRadix - 1)];
      std::size_t run = 0;
      for (auto& o : offsets) {
        std::size_t c = o;
        o = run;
        run += c;
      }
      for (auto l : leaves_) tmp[offsets[(l >> shift) & (kRadix - 1)]++] = l;
      leaves_.swap(tmp);
    }
  }

  std::uint64_t sieve_pass(std::uint64_t hi) {
    sort_leaves();
    std::uint64_t total = 0;
    std::size_t qi = 0;
    while (cursor_ < hi) {
      std::uint64_t a = cursor_;
      std::uint64_t b = std::min(hi, a + kSegment);
      std::size_t len = b - a;
      std::copy_n(wheel_.begin() + static_cast<std::ptrdiff_t>(a % kWheelPeriod), len,
                  cell_.begin());
      std::uint32_t* cell = cell_.data();
      for (auto& pp : powers_) {
        std::uint64_t m = pp.next;
        if (m >= b) continue;
        if (pp.is_prime) {
          const std::uint32_t tag = std::uint32_t(pp.index) << 16;
          for (; m < b; m += pp.q) {
            std::uint32_t& c = cell[m - a];
            c = ((c + pp.weight) & 0xFFFFu) | tag;
          }
        } else {
          for (; m < b; m += pp.q) cell[m - a] += pp.weight;
        }
        pp.next = m;
      }
      std::uint64_t n = a;
      while (qi < leaves_.size() && (leaves_[qi] >> 20) < b) {
        std::uint64_t w = leaves_[qi] >> 20;
        scan(n, w + 1, a);
        n = w + 1;
        // equal w may repeat; all of them see the same prefix state
        while (qi < leaves_.size() && (leaves_[qi] >> 20) == w) {
          total += prefix(static_cast<std::uint32_t>(leaves_[qi] & 0xFFFFF));
          ++qi;
        }
      }
      scan(n, b, a);
      cursor_ = b;
    }
    return total;
  }

  std::uint64_t x_;
  std::vector<std::uint32_t> p_;
  std::uint64_t z_;
  std::uint64_t budget_;
  std::vector<std::uint64_t> leaves_;

  std::uint64_t cursor_ = 1;
  std::vector<std::uint64_t> counts_;
  std::vector<std::uint64_t> blocks_;
  std::vector<PrimePower> powers_;
  // low 16 bits: scaled log of the odd smooth part found so far; high 16 bits:
  // index of the largest prime seen dividing n
  std::vector<std::uint32_t> cell_;
  std::vector<std::uint32_t> wheel_;
  std::vector<std::uint32_t> smooth_;
  std::uint64_t threshold_block_ = UINT64_MAX;
  int threshold_value_ = 0;
};

// Below this x the smooth numbers are enumerated one by one.
constexpr std::uint64_t kDirectLimit = 1u << 18;

// Number of n <= x built from primes[0..k).
std::uint64_t count_direct(std::uint64_t x, const std::vector<std::uint32_t>& primes,
                           std::size_t k) {
  std::uint64_t total = 1;
  for (std::size_t j = 0; j < k && primes[j] <= x; ++j) {
    total += count_direct(x / primes[j], primes, j + 1);
  }
  return total;
}

std::uint64_t auto_sieve_limit(std::uint64_t x, std::uint64_t y) {
  double z = 1.5 * std::pow(double(x), 0.55);
  z = std::max(z, double(y));
  z = std::max(z, 1e6);
  z = std::min(z, double(x));
  z = std::min(z, double(kMaxSieveLimit));
  return static_cast<std::uint64_t>(z);
}

}  // namespace

PsiEnvelope psi_envelope() {
  return {env_or("SMOOTHNUM_PSI_MAX_X", kDefaultMaxX), env_or("SMOOTHNUM_PSI_MAX_Y", kDefaultMaxY)};
}

std::uint64_t psi_exact(std::uint64_t x, std::uint64_t y, const PrimeTable& pt) {
  return psi_exact(x, y, pt, PsiTuning{});
}

std::uint64_t psi_exact(std::uint64_t x, std::uint64_t y, const PrimeTable& pt,
                        const PsiTuning& tuning) {
  if (x == 0) return 0;
  if (y >= x) return x;
  if (y < 2) return 1;
  if (y > pt.limit()) {
    throw RangeError("psi_exact needs primes up to y = " + std::to_string(y) +
                     ", table limit is " + std::to_string(pt.limit()));
  }
  if (x <= pt.limit() && static_cast<unsigned __int128>(y) * y >= x) {
    return psi_by_prime_counting(x, y, pt);
  }
  PsiEnvelope env = psi_envelope();
  if (x > env.max_x || x > kHardMaxX || y > env.max_y) {
    throw ResourceError("psi_exact(" + std::to_string(x) + ", " + std::to_string(y) +
                        ") outside envelope x <= " + std::to_string(env.max_x) +
                        ", y <= " + std::to_string(env.max_y));
  }
  std::size_t k = pt.pi(y);
  if (k == 1) return psi_two(x);
  if (x <= kDirectLimit && !tuning.sieve_limit) return count_direct(x, pt.primes(), k);
  std::uint64_t z = tuning.sieve_limit ? std::min(tuning.sieve_limit, x) : auto_sieve_limit(x, y);
  if (z > kMaxSieveLimit) throw ResourceError("sieve limit too large");
  std::uint64_t budget = tuning.leaf_budget ? tuning.leaf_budget : kDefaultLeafBudget;
  TreeSieve engine(x, pt.primes(), k, z, budget);
  return engine.run();
}

std::int64_t buchstab_residual_psi(std::uint64_t x, std::uint64_t y, std::uint64_t z,
                                   const PrimeTable& pt) {
  if (y > z || z > x) throw DomainError("buchstab_residual_psi requires y <= z <= x");
  if (z > pt.limit()) throw RangeError("buchstab_residual_psi needs primes up to z");
  if (y == z) return 0;
  std::uint64_t left = psi_exact(x, y, pt);
  std::uint64_t right = psi_exact(x, z, pt);
  // Primes p > sqrt(x) have x/p < p, so Psi(x/p, p) = x/p.
  std::uint64_t r = isqrt(x);
  std::uint64_t sum = 0;
  for (std::uint32_t p : pt.primes()) {
    if (p <= y) continue;
    if (p > z || p > r) break;
    sum += psi_exact(x / p, p, pt);
  }
  std::uint64_t split = std::max(y, r);
  if (z > split) sum += sum_quotients_over_primes(x, split, z, pt);
  return static_cast<std::int64_t>(left) - static_cast<std::int64_t>(right) +
         static_cast<std::int64_t>(sum);
}

std::vector<Real> alpha_values(std::uint64_t x, std::uint64_t y, const PrimeTable& pt) {
  if (x > 10'000'000) throw ResourceError("alpha_summatory limited to x <= 1e7");
  std::uint64_t ym = std::min(x, y);
  if (ym > pt.limit()) throw RangeError("alpha_values needs primes up to min(x, y)");
  // Dirichlet exponential via the log-derivative recurrence
  // alpha(n) log n = sum_{d | n, d = p^k <= y} log(p) alpha(n/d).
  struct Pp {
    std::uint64_t d;
    double log_p;
  };
  std::vector<Pp> powers;
  for (std::uint32_t p : pt.primes()) {
    if (p > ym) break;
    double lp = std::log(double(p));
    for (std::uint64_t d = p; d <= ym; d *= p) {
      powers.push_back({d, lp});
      if (d > ym / p) break;
    }
  }
  std::sort(powers.begin(), powers.end(), [](const Pp& a, const Pp& b) { return a.d < b.d; });
  std::vector<Real> acc(x + 1, 0.0);
  if (x >= 1) acc[1] = 1.0;
  for (std::uint64_t n = 1; n <= x; ++n) {
    if (n >= 2) acc[n] /= std::log(double(n));
    Real a = acc[n];
    if (a == 0) continue;
    for (const Pp& pp : powers) {
      if (pp.d > x / n) break;
      acc[n * pp.d] += pp.log_p * a;
    }
  }
  acc[0] = 0;
  return acc;
}

AlphaSum alpha_summatory(std::uint64_t x, std::uint64_t y, const PrimeTable& pt) {
  std::vector<Real> a = alpha_values(x, y, pt);
  KahanSum<double> acc;
  for (std::uint64_t n = 1; n <= x; ++n) acc += a[n];
  AlphaSum out;
  out.value = acc.value();
  // Each alpha(n) is a sum of nonnegative terms built in at most
  // Omega(n) + 2 rounded stages of depth log2(n).
  double depth = std::log2(double(std::max<std::uint64_t>(x, 2))) + 2;
  out.error_bound = out.value * depth * depth * 1.2e-16;
  return out;
}

}  // namespace smoothnum
