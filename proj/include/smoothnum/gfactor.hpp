#pragma once

#include "smoothnum/primes.hpp"
#include "smoothnum/specfun.hpp"
#include "smoothnum/types.hpp"
#include "smoothnum/zeta.hpp"

namespace smoothnum {

struct GBreakdown {
  Complex s;
  Real y = 0;
  Complex log_g1;
  Complex log_g2;
  Complex g_factored;  // exp(log_g1 + log_g2)
  Complex g_direct;    // exp(log zeta(s,y) - log F(s,y))
};

/// log G1(s,y) = sum_{p^k <= y} p^{-ks}/k - log F(s,y). Needs Re s > 0, y >= 4.
Complex log_g1(Complex s, Real y, const PrimeTable& pt);

/// d/ds log G1(s,y) from the von Mangoldt sum and zeta'/zeta.
Complex log_g1_derivative(Complex s, Real y, const PrimeTable& pt);

GBreakdown g_value(Complex s, Real y, const PrimeTable& pt);

/// Lambda(x,y) G(beta,y) with beta = 1 - xi(u)/log y.
Real corrected_prediction(Real x, Real y, const PrimeTable& pt, const RhoTable& table);

/// 1 + y^-beta/log y (-sum_{0<|gamma|<=T} y^rho/(rho - beta) + y^{1/2}/(2 beta - 1)).
/// Throws DomainError for beta < 0.55.
Real psiover_rhs(Real x, Real y, Real t_max, const ZeroList& zeros, const RhoTable& table);

}  // namespace smoothnum
