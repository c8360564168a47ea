#include "smoothnum/gfactor.hpp"

#include <cmath>
#include <string>

#include "smoothnum/debruijn.hpp"
#include "smoothnum/errors.hpp"

namespace smoothnum {

namespace {

void require_g_domain(Complex s, Real y) {
  if (!(s.real() > 0)) throw DomainError("G(s, y) requires Re s > 0");
  if (!(y >= 4)) throw DomainError("G(s, y) requires y >= 4");
}

}  // namespace

Complex log_g1(Complex s, Real y, const PrimeTable& pt) {
  require_g_domain(s, y);
  return prime_power_sum(pt, s, y) - log_f_transform(s, y);
}

Complex log_g1_derivative(Complex s, Real y, const PrimeTable& pt) {
  require_g_domain(s, y);
  Complex one_minus_s = 1.0 - s;
  // d/ds I((1-s) log y) = -(y^{1-s} - 1)/(1-s), tending to -log y at s = 1
  Complex di = std::abs(one_minus_s) < 1e-8
                   ? Complex(-std::log(y), 0)
                   : -(std::exp(one_minus_s * std::log(y)) - 1.0) / one_minus_s;
  // d/ds log((s-1) zeta(s)) = zeta'/zeta + 1/(s-1)
  Complex dz = s == Complex(1, 0)
                   ? Complex(kEulerGamma, 0)
                   : zeta_derivative(s) / riemann_zeta(s) + 1.0 / (s - 1.0);
  return -von_mangoldt_sum(pt, s, y) - dz - di;
}

GBreakdown g_value(Complex s, Real y, const PrimeTable& pt) {
  require_g_domain(s, y);
  GBreakdown g;
  g.s = s;
  g.y = y;
  g.log_g1 = log_g1(s, y, pt);
  g.log_g2 = log_g2(pt, s, y);
  g.g_factored = std::exp(g.log_g1 + g.log_g2);
  g.g_direct = std::exp(partial_zeta(pt, s, y) - log_f_transform(s, y));
  return g;
}

Real corrected_prediction(Real x, Real y, const PrimeTable& pt, const RhoTable& table) {
  if (!(y >= 2) || !(x >= y)) throw DomainError("corrected_prediction requires x >= y >= 2");
  Real lambda = lambda_xy(x, y, table);
  if (y < 4) throw DomainError("G(s, y) requires y >= 4");
  SaddleData d = saddle(x, y, table);
  return lambda * g_value(Complex(d.beta, 0), y, pt).g_direct.real();
}

Real psiover_rhs(Real x, Real y, Real t_max, const ZeroList& zeros, const RhoTable& table) {
  SaddleData d = saddle(x, y, table);
  if (!(d.beta >= 0.55)) {
    throw DomainError("psiover_rhs requires beta >= 0.55, got " + std::to_string(d.beta));
  }
  if (t_max > zeros.height()) {
    throw RangeError("zero height " + std::to_string(t_max) + " exceeds table height " +
                     std::to_string(zeros.height()));
  }
  Real beta = d.beta;
  Real log_y = std::log(y);
  Real sum = zero_sum(zeros, y, Complex(beta, 0), t_max).real();
  Real bracket = -sum + std::sqrt(y) / (2 * beta - 1);
  return 1 + std::exp(-beta * log_y) / log_y * bracket;
}

}  // namespace smoothnum
