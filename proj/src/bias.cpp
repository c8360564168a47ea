#include "smoothnum/bias.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "smoothnum/debruijn.hpp"
#include "smoothnum/errors.hpp"
#include "smoothnum/kahan.hpp"
#include "smoothnum/philox.hpp"
#include "smoothnum/smoothcount.hpp"

namespace smoothnum {

namespace {

void require_beta0(Real beta0) {
  if (!(beta0 > 0.5 && beta0 < 1)) {
    throw DomainError("beta0 must lie in (1/2, 1), got " + std::to_string(beta0));
  }
}

Real resolve_height(Real t_max, const ZeroList& zeros) {
  if (!(t_max > 0)) return zeros.height();
  if (t_max > zeros.height()) {
    throw RangeError("T = " + std::to_string(t_max) + " exceeds zero list height " +
                     std::to_string(zeros.height()));
  }
  return t_max;
}

// X = constant - sum amp[i] cos(theta_i + arg w_i), phases in units of 2^-32 turns
struct SampleModel {
  Real constant = 0;
  std::vector<Real> amp;
  std::vector<std::uint32_t> offset;
};

SampleModel make_model(const BiasConfig& cfg, const ZeroList& zeros, DensityMode mode) {
  SampleModel m;
  Real shift = 0.5;
  if (mode == DensityMode::SmoothBias) {
    require_beta0(cfg.beta0);
    m.constant = 1 / (2 * cfg.beta0 - 1);
    shift = 0.5 - cfg.beta0;
  } else {
    m.constant = 1;
  }
  Real height = resolve_height(cfg.t_max, zeros);
  for (Real g : zeros.gammas()) {
    if (g > height) break;
    Complex w = 1.0 / Complex(shift, g);
    m.amp.push_back(2 * std::abs(w));
    double turns = std::arg(w) / (2 * kPi);
    auto units = static_cast<std::int64_t>(std::llround(turns * 4294967296.0));
    m.offset.push_back(static_cast<std::uint32_t>(units));
  }
  // pad to whole Philox blocks
  while (m.amp.size() % 4 != 0) {
    m.amp.push_back(0);
    m.offset.push_back(0);
  }
  return m;
}

struct ChunkResult {
  std::uint64_t positive = 0;
  std::vector<std::uint64_t> bins;
};

void sample_range(const SampleModel& m, PhiloxKey key, std::uint64_t begin, std::uint64_t end,
                  const SampleHistogram* shape, ChunkResult& out) {
  const TurnTable& table = turn_table();
  const std::size_t blocks = m.amp.size() / 4;
  if (shape) out.bins.assign(shape->counts.size(), 0);
  for (std::uint64_t j = begin; j < end; ++j) {
    Real x = m.constant;
    for (std::size_t b = 0; b < blocks; ++b) {
      PhiloxCounter r = philox4x32_10(
          {std::uint32_t(j), std::uint32_t(j >> 32), std::uint32_t(b), 0}, key);
      for (int q = 0; q < 4; ++q) {
        std::size_t i = 4 * b + q;
        x -= m.amp[i] * turn_cos(table, r[q] + m.offset[i]);
      }
    }
    if (x > 0) ++out.positive;
    if (shape) {
      std::size_t nbins = out.bins.size();
      double pos = (x - shape->lo) / (shape->hi - shape->lo) * double(nbins);
      std::size_t k = pos <= 0 ? 0 : std::min(nbins - 1, static_cast<std::size_t>(pos));
      ++out.bins[k];
    }
  }
}

}  // namespace

Real x_of_y(Real y, Real beta0) {
  require_beta0(beta0);
  if (!(y >= 1)) throw DomainError("x(y) requires y >= 1");
  return std::expm1((1 - beta0) * std::log(y)) / (1 - beta0);
}

DeviationPoint deviation_point(Real y, Real beta0, const PrimeTable& pt, const RhoTable& table) {
  DeviationPoint d;
  d.y = y;
  d.log_x = x_of_y(y, beta0);
  PsiEnvelope env = psi_envelope();
  if (d.log_x > std::log(double(env.max_x))) {
    throw ResourceError("x(y) = exp(" + std::to_string(d.log_x) +
                        ") exceeds the psi_exact envelope " + std::to_string(env.max_x));
  }
  Real x = std::exp(d.log_x);
  d.x = static_cast<std::uint64_t>(std::floor(x));
  auto iy = static_cast<std::uint64_t>(std::floor(y));
  d.psi = d.x == 0 ? 0 : psi_exact(d.x, iy, pt);
  d.lambda = lambda_xy(x, y, table);
  d.deviation = (Real(d.psi) / d.lambda - 1) * std::pow(y, beta0 - 0.5) * std::log(y);
  return d;
}

Real normalized_deviation(Real y, Real beta0, const PrimeTable& pt, const RhoTable& table) {
  return deviation_point(y, beta0, pt, table).deviation;
}

Real model_rhs(Real y, Real beta0, Real t_max, const ZeroList& zeros) {
  require_beta0(beta0);
  if (!(y >= 2)) throw DomainError("model_rhs requires y >= 2");
  if (t_max > zeros.height()) {
    throw RangeError("T = " + std::to_string(t_max) + " exceeds zero list height " +
                     std::to_string(zeros.height()));
  }
  Real log_y = std::log(y);
  KahanSum<Real> acc;
  acc += 1 / (2 * beta0 - 1);
  for (Real g : zeros.gammas()) {
    if (g > t_max) break;
    Complex term = std::polar(1.0, g * log_y) / Complex(0.5 - beta0, g);
    acc += -2 * term.real();
  }
  return acc.value();
}

DensityEstimate li_density(const BiasConfig& cfg, const ZeroList& zeros, DensityMode mode,
                           SampleHistogram* histogram) {
  if (cfg.n_samples < 1000) {
    throw DomainError("li_density needs at least 1000 samples, got " +
                      std::to_string(cfg.n_samples));
  }
  if (histogram) {
    if (!(histogram->hi > histogram->lo)) throw DomainError("histogram needs lo < hi");
    if (histogram->counts.empty()) histogram->counts.assign(100, 0);
  }
  SampleModel m = make_model(cfg, zeros, mode);
  PhiloxKey key{std::uint32_t(cfg.seed), std::uint32_t(cfg.seed >> 32)};
  unsigned threads = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                      : cfg.threads;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, cfg.n_samples));
  std::vector<ChunkResult> parts(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    std::uint64_t begin = cfg.n_samples * t / threads;
    std::uint64_t end = cfg.n_samples * (t + 1) / threads;
    if (t + 1 == threads) {
      sample_range(m, key, begin, end, histogram, parts[t]);
    } else {
      pool.emplace_back(sample_range, std::cref(m), key, begin, end, histogram,
                        std::ref(parts[t]));
    }
  }
  for (auto& th : pool) th.join();
  std::uint64_t positive = 0;
  for (const auto& p : parts) {
    positive += p.positive;
    if (histogram) {
      for (std::size_t k = 0; k < p.bins.size(); ++k) histogram->counts[k] += p.bins[k];
    }
  }
  DensityEstimate est;
  est.n_samples = cfg.n_samples;
  est.seed = cfg.seed;
  est.density = Real(positive) / Real(cfg.n_samples);
  est.std_error = std::sqrt(est.density * (1 - est.density) / Real(cfg.n_samples));
  return est;
}

EmpiricalDensity empirical_log_density(const std::vector<Real>& y_grid, Real beta0, Real t_max,
                                       const ZeroList& zeros, const PrimeTable& pt,
                                       const RhoTable& table) {
  require_beta0(beta0);
  EmpiricalDensity out;
  std::vector<Real> ys(y_grid);
  std::sort(ys.begin(), ys.end());
  if (ys.empty()) return out;
  for (Real y : ys) {
    out.points.push_back(deviation_point(y, beta0, pt, table));
    out.model.push_back(model_rhs(y, beta0, t_max, zeros));
  }
  // weight of each point: half the log-distance to its neighbours
  std::size_t n = ys.size();
  std::vector<Real> weight(n, 1.0);
  if (n > 1) {
    for (std::size_t i = 0; i < n; ++i) {
      Real left = std::log(ys[i == 0 ? 0 : i - 1]);
      Real right = std::log(ys[i + 1 == n ? n - 1 : i + 1]);
      weight[i] = 0.5 * (right - left);
    }
  }
  Real total = 0, positive = 0, agree = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const DeviationPoint& d = out.points[i];
    Real diff = Real(d.psi) - d.lambda;
    total += weight[i];
    if (diff > 0) positive += weight[i];
    if ((diff > 0) == (out.model[i] > 0)) agree += weight[i];
  }
  if (!(total > 0)) {
    // all grid points coincide
    total = Real(n);
    positive = 0;
    agree = 0;
    for (std::size_t i = 0; i < n; ++i) {
      Real diff = Real(out.points[i].psi) - out.points[i].lambda;
      positive += diff > 0;
      agree += (diff > 0) == (out.model[i] > 0);
    }
  }
  out.positive.density = positive / total;
  out.positive.n_samples = n;
  out.positive.std_error = std::sqrt(out.positive.density * (1 - out.positive.density) / Real(n));
  out.sign_agreement = agree / total;
  return out;
}

}  // namespace smoothnum
