#pragma once

#include "smoothnum/specfun.hpp"
#include "smoothnum/types.hpp"

namespace smoothnum {

enum class LambdaMethod { AtomSum, IntegrationByParts };

struct LambdaResult {
  Real value = 0;
  LambdaMethod method = LambdaMethod::AtomSum;
  Real est_error = 0;
};

/// lambda_y(u) from the atoms 1/n and the density -floor(t)/t^2 of d(floor(t)/t).
/// Throws ResourceError when y^u > 1e7, DomainError unless y >= 2 and u >= 0.
LambdaResult lambda_atom_sum(Real u, Real y, const RhoTable& table);

/// lambda_y(u) = rho(u) - {y^u}/y^u + (1/log y) int_1^{y^{u-1}} -rho'(u - log t/log y) {t} t^-2 dt.
/// Unit pieces up to min(y^{u-1}, piece_limit); the remainder by a Bernoulli expansion.
LambdaResult lambda_ibp(Real u, Real y, const RhoTable& table, Real piece_limit = 1e6);

/// lambda_y(u) using log y directly (for y^u beyond double-exact range).
LambdaResult lambda_ibp_log(Real u, Real log_y, const RhoTable& table, Real piece_limit = 1e6);

/// Lambda(x,y) = x lambda_y(log x / log y); atom sum for x <= 1e6, else integration by parts.
/// Returns floor(x) for y >= x, 0 for x < 1.
Real lambda_xy(Real x, Real y, const RhoTable& table);

/// log F(s,y) = gamma + I((1-s) log y) + log((s-1) zeta(s)) + log log y.
Complex log_f_transform(Complex s, Real y);

struct LambdaAsymptotic {
  Real lambda = 0;
  Real r_based = 0;   // x rho(u) K(-r(u)/log y)
  Real xi_based = 0;  // x rho(u) K(-xi(u)/log y)
  Real ratio_r = 0;   // lambda / r_based
  Real ratio_xi = 0;  // lambda / xi_based
};

LambdaAsymptotic lambda_asymptotic(Real x, Real y, const RhoTable& table);

/// Lambda(x,y) - [Lambda(x,z) - int_y^z Lambda(x/t,t) dt/log t], using a
/// composite Gauss-Legendre rule with the given points per smooth piece.
Real buchstab_residual_lambda(Real x, Real y, Real z, const RhoTable& table, int points = 8);

}  // namespace smoothnum
