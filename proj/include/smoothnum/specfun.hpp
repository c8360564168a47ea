#pragma once

#include <vector>

#include "smoothnum/types.hpp"

namespace smoothnum {

/// Nonnegative root of e^xi = 1 + u xi. Throws DomainError for u < 1.
Real xi(Real u);

/// I(s) = integral over [0, s] of (e^v - 1)/v dv.
Complex big_i(Complex s);

/// Dickman rho on [0, u_max], held in log space.
///
/// On each [k, k+1] the solution is a power series about k + 1/2 whose
/// coefficients follow from the series on [k-1, k]; log_rho at the grid points
/// is filled from those series. interpolation_order 0 evaluates the series
/// directly, 3 interpolates the grid with cubic Lagrange in log space.
class RhoTable {
 public:
  Real step() const { return step_; }
  Real u_max() const { return u_max_; }
  int interpolation_order() const { return order_; }
  const std::vector<Real>& log_rho_grid() const { return grid_; }

  Real log_rho(Real u) const;
  Real rho(Real u) const;

  friend RhoTable build_rho_table(Real u_max, Real step, int interpolation_order);

 private:
  Real series_log_rho(Real u) const;
  Real interpolated_log_rho(Real u) const;

  Real step_ = 0;
  Real u_max_ = 0;
  int order_ = 0;
  std::vector<Real> grid_;
  int terms_ = 0;
  std::vector<Real> coeffs_;  // interval k occupies [k*terms_, (k+1)*terms_)
  std::vector<Real> scale_;   // log of the factor pulled out of interval k
};

/// Throws DomainError unless u_max >= 1, 0 < step <= 1/64 and order is 0 or 3.
RhoTable build_rho_table(Real u_max = 500, Real step = 1.0 / 256, int interpolation_order = 0);

/// Throws RangeError outside [0, u_max].
Real rho(const RhoTable& table, Real u);
Real log_rho(const RhoTable& table, Real u);

/// rho'(u) = -rho(u-1)/u for u > 1, and 0 for u <= 1.
Real rho_prime(const RhoTable& table, Real u);

/// Laplace transform of rho: exp(gamma + I(-s)).
Complex rho_hat(Complex s);

/// K(t) = t zeta(t+1)/(t+1), with K(0) = 1. Throws PoleError at t = -1.
Complex k_factor(Complex t);

struct SaddleData {
  Real u = 0;
  Real xi = 0;
  Real beta = 0;
  Real r = 0;
};

/// Saddle data for u = log x / log y. Throws DomainError unless x >= y >= 2.
SaddleData saddle(Real x, Real y, const RhoTable& table);

/// Same from log x and log y, for x beyond double range of interest.
SaddleData saddle_log(Real log_x, Real log_y, const RhoTable& table);

}  // namespace smoothnum
