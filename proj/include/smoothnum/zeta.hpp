#pragma once

#include <string>
#include <vector>

#include "smoothnum/types.hpp"

namespace smoothnum {

/// Riemann zeta via Euler-Maclaurin. Throws PoleError at s = 1.
Complex riemann_zeta(Complex s);

/// (s - 1) zeta(s); entire, equal to 1 at s = 1.
Complex zeta_times_s_minus_1(Complex s);

/// zeta'(s). Throws PoleError at s = 1.
Complex zeta_derivative(Complex s);

/// log((s - 1) zeta(s)), real on the positive real axis and continued
/// vertically from Re s. Throws DomainError for Re s <= 0 and
/// SingularityError within 1e-8 of a zero.
Complex log_zeta_times_s_minus_1(Complex s);

/// Positive ordinates of zeta zeros, complete up to height.
class ZeroList {
 public:
  ZeroList() = default;
  ZeroList(std::vector<Real> gammas, Real height);

  const std::vector<Real>& gammas() const { return gammas_; }
  Real height() const { return height_; }
  std::size_t size() const { return gammas_.size(); }
  bool empty() const { return gammas_.empty(); }

  /// Ordinates up to and including t (t <= height).
  std::size_t count_up_to(Real t) const;

  /// The first n ordinates, with height set to the n-th ordinate.
  ZeroList first(std::size_t n) const;

  /// Ordinates <= t, with height t. Throws RangeError for t > height.
  ZeroList truncated(Real t) const;

 private:
  std::vector<Real> gammas_;
  Real height_ = 0;
};

/// Riemann-von Mangoldt main term for the number of zeros with 0 < gamma <= t.
Real riemann_von_mangoldt(Real t);

/// Reads one ordinate per line. A non-positive or NaN height means "up to the
/// last entry". Throws ParseError (with line number) or IoError.
ZeroList load_zeros(const std::string& path, Real height = 0);

/// Sum over zeros rho = 1/2 + i gamma, 0 < gamma <= T, and their conjugates
/// of y^rho / (rho - s0). Throws RangeError for T > height.
Complex zero_sum(const ZeroList& zeros, Real y, Complex s0, Real t_max);

}  // namespace smoothnum
