#include "smoothnum/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "smoothnum/errors.hpp"
#include "smoothnum/quadrature.hpp"
#include "smoothnum/zeta.hpp"

namespace smoothnum {

namespace {

// (e^xi - 1)/xi and its derivative, continuous at 0.
double g_ratio(double x) { return x < 1e-8 ? 1 + 0.5 * x : std::expm1(x) / x; }

double g_ratio_derivative(double x) {
  if (x < 1e-3) return 0.5 + x / 3 + x * x / 8 + x * x * x / 30;
  return (std::exp(x) * (x - 1) + 1) / (x * x);
}

Complex complex_expm1(Complex v) {
  double a = v.real();
  double b = v.imag();
  double s = std::sin(0.5 * b);
  return {std::expm1(a) * std::cos(b) - 2 * s * s, std::exp(a) * std::sin(b)};
}

// (e^v - 1)/v with the removable singularity filled in.
Complex expm1_ratio(Complex v) {
  if (std::abs(v) < 1e-4) return 1.0 + v * (0.5 + v * (1.0 / 6 + v / 24.0));
  return complex_expm1(v) / v;
}

Complex big_i_series(Complex s) {
  Complex power = s;
  Complex sum = 0;
  for (int k = 1; k < 60; ++k) {
    Complex term = power / double(k);
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    power *= s / double(k + 1);
  }
  return sum;
}

Complex big_i_panels(Complex s, int panels) {
  constexpr int kOrder = 20;
  Complex total = 0;
  for (int m = 0; m < panels; ++m) {
    double a = double(m) / panels;
    double b = double(m + 1) / panels;
    total += gauss_panel<Complex>([&](double tau) { return s * expm1_ratio(s * tau); }, a, b,
                                  kOrder);
  }
  return total;
}

void require_in_table(const RhoTable& table, Real u) {
  if (!(u >= 0 && u <= table.u_max())) {
    throw RangeError("u = " + std::to_string(u) + " outside rho table [0, " +
                     std::to_string(table.u_max()) + "]");
  }
}

}  // namespace

Real xi(Real u) {
  if (!(u >= 1)) throw DomainError("xi(u) requires u >= 1");
  if (u == 1) return 0;
  double lo = 0;
  double hi = 2 * std::log(u + 2);
  double x = std::clamp(std::log1p(u * std::log1p(u)), lo, hi);
  if (u - 1 < 1e-3) x = 2 * (u - 1);
  for (int iter = 0; iter < 200; ++iter) {
    double f = g_ratio(x) - u;
    if (f > 0) {
      hi = x;
    } else {
      lo = x;
    }
    double step = f / g_ratio_derivative(x);
    double next = x - step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-16 * std::max(1.0, x) || hi - lo <= 1e-16 * hi) {
      x = next;
      break;
    }
    x = next;
  }
  return x;
}

Complex big_i(Complex s) {
  double r = std::abs(s);
  if (r <= 1) return big_i_series(s);
  int panels = static_cast<int>(std::ceil(r / 4)) + 1;
  Complex coarse = big_i_panels(s, panels);
  for (int round = 0; round < 8; ++round) {
    Complex fine = big_i_panels(s, 2 * panels);
    if (std::abs(fine - coarse) <= 1e-14 * std::max(1.0, std::abs(fine))) return fine;
    coarse = fine;
    panels *= 2;
  }
  return coarse;
}

RhoTable build_rho_table(Real u_max, Real step, int interpolation_order) {
  if (!(u_max >= 1) || !std::isfinite(u_max)) throw DomainError("rho table needs u_max >= 1");
  if (!(step > 0 && step <= 1.0 / 64)) throw DomainError("rho table step must lie in (0, 1/64]");
  if (interpolation_order != 0 && interpolation_order != 3) {
    throw DomainError("interpolation order must be 0 (series) or 3 (cubic)");
  }
  RhoTable t;
  t.step_ = step;
  t.u_max_ = u_max;
  t.order_ = interpolation_order;
  t.terms_ = 64;
  const int n = t.terms_;
  const int intervals = static_cast<int>(std::ceil(u_max)) + 1;
  t.coeffs_.assign(std::size_t(intervals) * n, 0.0);
  t.scale_.assign(intervals, 0.0);
  t.coeffs_[0] = 1;  // rho = 1 on [0, 1]
  std::vector<double> a(n);
  for (int k = 1; k < intervals; ++k) {
    const double* b = &t.coeffs_[std::size_t(k - 1) * n];
    const double c = k + 0.5;
    // (c + t) a'(t) = -b(t) coefficientwise
    a[0] = 0;
    a[1] = -b[0] / c;
    for (int i = 1; i + 1 < n; ++i) a[i + 1] = -(b[i] + i * a[i]) / (c * (i + 1));
    // k rho(k + 1/2) = int_{k-1/2}^{k+1/2} rho, split at k; every term is positive
    double prev = 0, rest = 0;
    for (int i = n - 1; i >= 0; --i) prev = prev * 0.5 + b[i] / (i + 1);
    prev *= 0.5;
    for (int i = n - 1; i >= 1; --i) rest = rest * -0.5 + a[i] / (i + 1);
    rest *= -0.25;
    a[0] = (prev + rest) / k;
    double* dst = &t.coeffs_[std::size_t(k) * n];
    for (int i = 0; i < n; ++i) dst[i] = a[i] / a[0];
    t.scale_[k] = t.scale_[k - 1] + std::log(a[0]);
  }
  auto points = static_cast<std::size_t>(std::floor(u_max / step + 1e-9)) + 1;
  t.grid_.resize(points);
  for (std::size_t i = 0; i < points; ++i) t.grid_[i] = t.series_log_rho(double(i) * step);
  return t;
}

Real RhoTable::series_log_rho(Real u) const {
  if (u <= 1) return 0;
  auto k = static_cast<std::size_t>(std::floor(u));
  double t = u - (double(k) + 0.5);
  const double* a = &coeffs_[k * terms_];
  double v = 0;
  for (int i = terms_ - 1; i >= 0; --i) v = v * t + a[i];
  return scale_[k] + std::log(v);
}

Real RhoTable::interpolated_log_rho(Real u) const {
  if (u <= 1) return 0;
  auto k = std::floor(u);
  // four grid points inside [k, k+1] around u
  auto first = static_cast<long>(std::ceil(k / step_ - 1e-9));
  auto last = static_cast<long>(std::floor((k + 1) / step_ + 1e-9));
  last = std::min<long>(last, static_cast<long>(grid_.size()) - 1);
  long i0 = static_cast<long>(std::floor(u / step_)) - 1;
  i0 = std::clamp(i0, first, std::max(first, last - 3));
  double result = 0;
  for (long i = i0; i < i0 + 4; ++i) {
    double w = 1;
    for (long j = i0; j < i0 + 4; ++j) {
      if (j != i) w *= (u - j * step_) / ((i - j) * step_);
    }
    result += w * grid_[static_cast<std::size_t>(i)];
  }
  return result;
}

Real RhoTable::log_rho(Real u) const {
  require_in_table(*this, u);
  if (u <= 1) return 0;
  return order_ == 3 ? interpolated_log_rho(u) : series_log_rho(u);
}

Real RhoTable::rho(Real u) const { return std::exp(log_rho(u)); }

Real rho(const RhoTable& table, Real u) { return table.rho(u); }

Real log_rho(const RhoTable& table, Real u) { return table.log_rho(u); }

Real rho_prime(const RhoTable& table, Real u) {
  require_in_table(table, u);
  if (u <= 1) return 0;
  return -table.rho(u - 1) / u;
}

Complex rho_hat(Complex s) { return std::exp(kEulerGamma + big_i(-s)); }

Complex k_factor(Complex t) {
  if (t == Complex(-1, 0)) throw PoleError("K(t) has a pole at t = -1");
  return zeta_times_s_minus_1(t + 1.0) / (t + 1.0);
}

SaddleData saddle(Real x, Real y, const RhoTable& table) {
  if (!(y >= 2) || !(x >= y)) throw DomainError("saddle requires x >= y >= 2");
  return saddle_log(std::log(x), std::log(y), table);
}

SaddleData saddle_log(Real log_x, Real log_y, const RhoTable& table) {
  if (!(log_y >= std::log(2.0) - 1e-15) || !(log_x >= log_y)) {
    throw DomainError("saddle requires x >= y >= 2");
  }
  SaddleData d;
  d.u = log_x / log_y;
  d.xi = xi(d.u);
  d.beta = 1 - d.xi / log_y;
  if (d.u > 1) {
    d.r = std::exp(table.log_rho(d.u - 1) - table.log_rho(d.u)) / d.u;
  }
  return d;
}

}  // namespace smoothnum
