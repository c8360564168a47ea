#include "smoothnum/debruijn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "smoothnum/errors.hpp"
#include "smoothnum/kahan.hpp"
#include "smoothnum/quadrature.hpp"
#include "smoothnum/zeta.hpp"

namespace smoothnum {

namespace {

constexpr double kAtomLimit = 1e7;
constexpr double kAtomPreferred = 1e6;
constexpr double kPieceLimit = 1e6;
constexpr double kEps = std::numeric_limits<double>::epsilon();
// max |B3({t})| / 3! for the periodic Bernoulli polynomial B3
constexpr double kB3Bound = 0.0080188;

double rho_nonneg(const RhoTable& table, double v) {
  if (v < 0) return 0;
  return table.rho(v);
}

// -rho'(v), zero for v <= 1
double h_of(const RhoTable& table, double v) {
  if (v <= 1) return 0;
  return table.rho(v - 1) / v;
}

// d/dv of -rho'(v) on the side of v facing v_inside
double h_prime(const RhoTable& table, double v, double v_inside) {
  if (v < 1 || (v == 1 && v_inside < 1)) return 0;
  bool below_two = v < 2 || (v == 2 && v_inside < 2);
  double rho_d = below_two ? 0 : -table.rho(v - 2) / (v - 1);
  return rho_d / v - table.rho(v - 1) / (v * v);
}

double frac(double t) { return t - std::floor(t); }

double bernoulli2(double f) { return f * f - f + 1.0 / 6; }
double bernoulli3(double f) { return f * (f - 0.5) * (f - 1); }

// Points t = X y^{-k} in (lo, hi), ascending, where u - log t / L is an integer.
std::vector<double> kink_points(double u, double log_y, double lo, double hi) {
  std::vector<double> out;
  for (int k = static_cast<int>(std::floor(u)); k >= 1; --k) {
    double t = std::exp((u - k) * log_y);
    if (t > lo && t < hi) out.push_back(t);
  }
  return out;
}

struct IbpParts {
  double rho_u = 0;
  double frac_term = 0;  // {X}/X
  double integral = 0;   // (1/L) int h(u - log t/L) {t} t^-2 dt
  double abs_sum = 0;
  double tail_error = 0;
};

// Gauss order for the unit cell [n, n + 1]; the panel error falls like (2n)^(-2 order).
int cell_order(long n) {
  if (n <= 4) return 20;
  if (n <= 32) return 12;
  return n <= 256 ? 8 : 4;
}

// Integral over [a, b] (inside one unit cell starting at n) of g(t) with
// Gauss-Legendre, split at the kinks in the list from position *kink.
template <typename G>
double cell_integral(G&& g, double a, double b, const std::vector<double>& kinks,
                     std::size_t& kink, int order) {
  while (kink < kinks.size() && kinks[kink] <= a) ++kink;
  double total = 0;
  double left = a;
  while (kink < kinks.size() && kinks[kink] < b) {
    total += gauss_panel<double>(g, left, kinks[kink], order);
    left = kinks[kink];
    ++kink;
  }
  total += gauss_panel<double>(g, left, b, order);
  return total;
}

// Bernoulli-expansion tail of int_{a}^{M} f(t) {t} dt, f(t) = h(v)/(L t^2), v = u - log t/L,
// from integer a to M = y^{u-1} (possibly beyond double range).
void ibp_tail(const RhoTable& table, double u, double log_y, double a, IbpParts& out) {
  double v_top = u - std::log(a) / log_y;
  std::vector<double> cuts{v_top};
  for (double k = std::ceil(v_top) - 1; k > 1; k -= 1) cuts.push_back(k);
  cuts.push_back(1.0);
  auto t_of = [&](double v) { return std::exp((u - v) * log_y); };
  auto f_of = [&](double v, double t) { return h_of(table, v) / (log_y * t * t); };
  auto fp_of = [&](double v, double t, double v_inside) {
    double h = (v == 1.0 && v_inside > 1.0) ? 1.0 : h_of(table, v);
    return -h_prime(table, v, v_inside) / (log_y * log_y * t * t * t) -
           2 * h / (log_y * t * t * t);
  };
  KahanSum<double> acc;
  double err = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double v_hi = cuts[i];
    double v_lo = cuts[i + 1];
    double mid = 0.5 * (v_hi + v_lo);
    // half of int f dt = half of int h(v) y^{v-u} dv
    int panels = std::max(1, static_cast<int>(std::ceil((v_hi - v_lo) * log_y / 2)));
    double width = (v_hi - v_lo) / panels;
    double smooth = 0;
    for (int p = 0; p < panels; ++p) {
      double lo = v_lo + p * width;
      double hi = lo + width;
      smooth += gauss_panel<double>(
          [&](double v) { return h_of(table, v) * std::exp((v - u) * log_y); }, lo, hi, 20);
    }
    acc += 0.5 * smooth;
    // boundary terms at t_a (v_hi) and t_b (v_lo)
    double ta = t_of(v_hi);
    double tb = t_of(v_lo);
    double fa = f_of(v_hi, ta);
    double fb = v_lo == 1.0 ? 1.0 / (log_y * tb * tb) : f_of(v_lo, tb);
    double fpa = fp_of(v_hi, ta, mid);
    double fpb = fp_of(v_lo, tb, mid);
    bool exact_a = ta < 4503599627370496.0;
    bool exact_b = tb < 4503599627370496.0;
    double ba2 = exact_a ? bernoulli2(frac(ta)) : 0, ba3 = exact_a ? bernoulli3(frac(ta)) : 0;
    double bb2 = exact_b ? bernoulli2(frac(tb)) : 0, bb3 = exact_b ? bernoulli3(frac(tb)) : 0;
    if (!exact_a) err += std::abs(fa) / 12 + std::abs(fpa) * 0.0481 / 6;
    if (!exact_b) err += std::abs(fb) / 12 + std::abs(fpb) * 0.0481 / 6;
    acc += 0.5 * (fb * bb2 - fa * ba2);
    acc += -(fpb * bb3 - fpa * ba3) / 6;
    // remainder bound: kB3Bound * total variation of f' over the piece
    double tv = 0;
    double prev = fpa;
    const int samples = 64;
    for (int s = 1; s <= samples; ++s) {
      double v = v_hi - (v_hi - v_lo) * s / samples;
      double cur = fp_of(v, t_of(v), mid);
      tv += std::abs(cur - prev);
      prev = cur;
    }
    err += kB3Bound * tv;
  }
  out.integral += acc.value();
  out.abs_sum += std::abs(acc.value());
  out.tail_error += err;
}

// x_value is y^u when known exactly (e.g. the x of Lambda(x, y)); NaN otherwise.
IbpParts ibp_parts(const RhoTable& table, double u, double log_y, double x_value,
                   double piece_limit = kPieceLimit) {
  IbpParts out;
  double log_x = u * log_y;
  out.rho_u = u <= 1 ? 1.0 : table.rho(u);
  double big_x = std::isnan(x_value) ? std::exp(log_x) : x_value;
  if (big_x < 4503599627370496.0) {
    out.frac_term = frac(big_x) / big_x;
  } else {
    out.tail_error += 1 / big_x;
  }
  if (u <= 1) return out;
  double m = std::exp((u - 1) * log_y);  // h vanishes beyond t = M
  double stop = std::min(m, std::floor(piece_limit));
  std::vector<double> kinks = kink_points(u, log_y, 1.0, stop);
  std::size_t kink = 0;
  KahanSum<double> acc;
  double abs_sum = 0;
  auto last = static_cast<long>(std::floor(stop));
  for (long n = 1; n <= last; ++n) {
    double a = double(n);
    double b = std::min(a + 1, stop);
    if (b <= a) break;
    int order = cell_order(n);
    double piece = cell_integral(
        [&](double t) { return h_of(table, u - std::log(t) / log_y) * (t - a) / (t * t); }, a, b,
        kinks, kink, order);
    acc += piece;
    abs_sum += std::abs(piece);
  }
  out.integral = acc.value() / log_y;
  out.abs_sum = abs_sum / log_y;
  if (m > stop) {
    IbpParts tail;
    ibp_tail(table, u, log_y, stop, tail);
    out.integral += tail.integral;
    out.abs_sum += tail.abs_sum;
    out.tail_error += tail.tail_error;
  }
  return out;
}

LambdaResult finish_ibp(const IbpParts& p) {
  LambdaResult r;
  r.method = LambdaMethod::IntegrationByParts;
  r.value = p.rho_u - p.frac_term + p.integral;
  r.est_error = p.tail_error + 4 * kEps * (p.rho_u + p.frac_term + p.abs_sum);
  return r;
}

LambdaResult atom_core(const RhoTable& table, double u, double log_y, double big_x) {
  if (big_x > kAtomLimit * (1 + 1e-12)) {
    throw ResourceError("atom sum needs y^u <= 1e7, got " + std::to_string(big_x));
  }
  LambdaResult r;
  r.method = LambdaMethod::AtomSum;
  auto last = static_cast<long>(std::floor(big_x));
  if (u <= 1) {
    r.value = double(last) / big_x;
    r.est_error = kEps * r.value;
    return r;
  }
  std::vector<double> kinks = kink_points(u, log_y, 1.0, big_x);
  std::size_t kink = 0;
  KahanSum<double> acc;
  double abs_sum = 0;
  for (long n = 1; n <= last; ++n) {
    double a = double(n);
    double atom = rho_nonneg(table, u - std::log(a) / log_y) / a;
    double b = std::min(a + 1, big_x);
    double piece = 0;
    if (b > a) {
      int order = cell_order(n);
      piece = a * cell_integral(
                      [&](double t) {
                        return rho_nonneg(table, u - std::log(t) / log_y) / (t * t);
                      },
                      a, b, kinks, kink, order);
    }
    acc += atom - piece;
    abs_sum += atom + piece;
  }
  r.value = acc.value();
  r.est_error = 4 * kEps * abs_sum;
  return r;
}

void check_lambda_args(Real u, Real y) {
  if (!(y >= 2)) throw DomainError("lambda requires y >= 2");
  if (!(u >= 0)) throw DomainError("lambda requires u >= 0");
}

}  // namespace

LambdaResult lambda_atom_sum(Real u, Real y, const RhoTable& table) {
  check_lambda_args(u, y);
  double log_y = std::log(y);
  return atom_core(table, u, log_y, std::pow(y, u));
}

LambdaResult lambda_ibp(Real u, Real y, const RhoTable& table, Real piece_limit) {
  check_lambda_args(u, y);
  if (!(piece_limit >= 2)) throw DomainError("piece limit must be at least 2");
  double log_y = std::log(y);
  return finish_ibp(ibp_parts(table, u, log_y, std::pow(y, u), piece_limit));
}

LambdaResult lambda_ibp_log(Real u, Real log_y, const RhoTable& table, Real piece_limit) {
  if (!(piece_limit >= 2)) throw DomainError("piece limit must be at least 2");
  if (!(log_y >= std::log(2.0) - 1e-15)) throw DomainError("lambda requires y >= 2");
  if (!(u >= 0)) throw DomainError("lambda requires u >= 0");
  return finish_ibp(
      ibp_parts(table, u, log_y, std::numeric_limits<double>::quiet_NaN(), piece_limit));
}

Real lambda_xy(Real x, Real y, const RhoTable& table) {
  if (!(y >= 2)) throw DomainError("Lambda(x, y) requires y >= 2");
  if (!(x >= 1)) return 0;
  if (y >= x) return std::floor(x);
  double log_y = std::log(y);
  double u = std::log(x) / log_y;
  LambdaResult r = x <= kAtomPreferred ? atom_core(table, u, log_y, x)
                                       : finish_ibp(ibp_parts(table, u, log_y, x));
  return x * r.value;
}

Complex log_f_transform(Complex s, Real y) {
  if (!(s.real() > 0)) throw DomainError("F(s, y) requires Re s > 0");
  if (!(y > 1)) throw DomainError("F(s, y) requires y > 1");
  double log_y = std::log(y);
  return kEulerGamma + big_i((1.0 - s) * log_y) + log_zeta_times_s_minus_1(s) + std::log(log_y);
}

LambdaAsymptotic lambda_asymptotic(Real x, Real y, const RhoTable& table) {
  SaddleData d = saddle(x, y, table);
  double log_y = std::log(y);
  LambdaAsymptotic out;
  double base = x * table.rho(d.u);
  out.lambda = lambda_xy(x, y, table);
  out.r_based = base * k_factor(Complex(-d.r / log_y, 0)).real();
  out.xi_based = base * k_factor(Complex(-d.xi / log_y, 0)).real();
  out.ratio_r = out.lambda / out.r_based;
  out.ratio_xi = out.lambda / out.xi_based;
  return out;
}

Real buchstab_residual_lambda(Real x, Real y, Real z, const RhoTable& table, int points) {
  if (!(y >= 2) || !(y <= z) || !(z <= x)) {
    throw DomainError("buchstab_residual_lambda requires 2 <= y <= z <= x");
  }
  if (z == y) return 0;
  const double log_x = std::log(x);

  // Lambda(x/t, t) = (x/t)(rho(u_t) + J_t) - {x/t}; the last term jumps at t = x/m.
  KahanSum<double> jump;
  {
    auto m_lo = static_cast<long>(std::floor(x / z));
    auto m_hi = static_cast<long>(std::ceil(x / y));
    for (long m = m_lo; m <= m_hi; ++m) {
      double a = std::max(y, x / double(m + 1));
      double b = std::min(z, x / double(m));
      if (!(b > a)) continue;
      jump += gauss_panel<double>(
          [&](double t) { return (x / t - double(m)) / std::log(t); }, a, b, points);
    }
  }

  std::vector<double> cuts{y, z};
  for (int k = 1; k < 64; ++k) {
    double t = std::exp(log_x / (k + 1));
    if (t > y && t < z) cuts.push_back(t);
    if (t <= y) break;
  }
  {
    auto m_lo = static_cast<long>(std::ceil(x / (z * z)));
    auto m_hi = static_cast<long>(std::floor(x / (y * y)));
    for (long m = std::max(1L, m_lo); m <= m_hi; ++m) {
      double t = std::sqrt(x / double(m));
      if (t > y && t < z) cuts.push_back(t);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  auto smooth_part = [&](double t) {
    double log_t = std::log(t);
    double u_t = log_x / log_t - 1;
    double body = 1.0;
    if (u_t > 1) {
      IbpParts p = ibp_parts(table, u_t, log_t, x / t);
      body = p.rho_u + p.integral;
    }
    return (x / t) * body / log_t;
  };
  KahanSum<double> smooth;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] > cuts[i]) smooth += gauss_panel<double>(smooth_part, cuts[i], cuts[i + 1], points);
  }
  double integral = smooth.value() - jump.value();
  return lambda_xy(x, y, table) - (lambda_xy(x, z, table) - integral);
}

}  // namespace smoothnum
