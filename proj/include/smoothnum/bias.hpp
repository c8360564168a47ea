#pragma once

#include <cstdint>
#include <vector>

#include "smoothnum/primes.hpp"
#include "smoothnum/specfun.hpp"
#include "smoothnum/types.hpp"
#include "smoothnum/zeta.hpp"

namespace smoothnum {

struct BiasConfig {
  Real beta0 = 0.75;
  Real t_max = 0;  // zero height; <= 0 means the whole list
  std::uint64_t seed = 0;
  std::uint64_t n_samples = 1'000'000;
  std::vector<Real> y_grid;
  unsigned threads = 1;
};

struct DensityEstimate {
  Real density = 0;
  Real std_error = 0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
};

/// Which random variable li_density samples.
///   SmoothBias:      1/(2 beta0 - 1) - sum 2 Re(e^{i theta} / (1/2 - beta0 + i gamma))
///   PiLiCalibration: 1 - sum 2 Re(e^{i theta} / (1/2 + i gamma))
enum class DensityMode { SmoothBias, PiLiCalibration };

/// Counts of samples per bin over [lo, hi); out-of-range samples go to the end bins.
struct SampleHistogram {
  Real lo = -10;
  Real hi = 10;
  std::vector<std::uint64_t> counts;
};

/// log x(y) = (y^{1-beta0} - 1)/(1 - beta0).
Real x_of_y(Real y, Real beta0);

struct DeviationPoint {
  Real y = 0;
  Real log_x = 0;
  std::uint64_t x = 0;  // floor(x(y))
  std::uint64_t psi = 0;
  Real lambda = 0;
  Real deviation = 0;  // (Psi/Lambda - 1) y^{beta0 - 1/2} log y
};

/// Psi and Lambda at (x(y), y). Throws ResourceError when x(y) leaves the psi_exact envelope.
DeviationPoint deviation_point(Real y, Real beta0, const PrimeTable& pt, const RhoTable& table);

Real normalized_deviation(Real y, Real beta0, const PrimeTable& pt, const RhoTable& table);

/// 1/(2 beta0 - 1) - sum_{0<gamma<=T} 2 Re(y^{i gamma} / (1/2 - beta0 + i gamma)).
Real model_rhs(Real y, Real beta0, Real t_max, const ZeroList& zeros);

/// Fraction of samples of the mode's random variable that are positive, with
/// independent uniform phases. Sample j depends only on (seed, j).
DensityEstimate li_density(const BiasConfig& cfg, const ZeroList& zeros,
                           DensityMode mode = DensityMode::SmoothBias,
                           SampleHistogram* histogram = nullptr);

struct EmpiricalDensity {
  DensityEstimate positive;  // log-weighted density of Psi > Lambda
  Real sign_agreement = 0;   // log-weighted rate of sign(Psi - Lambda) == sign(model_rhs)
  std::vector<DeviationPoint> points;
  std::vector<Real> model;
};

EmpiricalDensity empirical_log_density(const std::vector<Real>& y_grid, Real beta0, Real t_max,
                                       const ZeroList& zeros, const PrimeTable& pt,
                                       const RhoTable& table);

}  // namespace smoothnum
