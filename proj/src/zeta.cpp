#include "smoothnum/zeta.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "smoothnum/errors.hpp"
#include "smoothnum/kahan.hpp"

namespace smoothnum {

namespace {

// B_{2k} / (2k)! for k = 1..10.
constexpr std::array<double, 10> kBernoulliOverFactorial = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
    -174611.0 / 330.0 / 2432902008176640000.0,
};

// zeta(s) = head + n1s / (s - 1) + corr, with derivatives of head and corr.
struct EulerMaclaurin {
  Complex head, head_d;
  Complex corr, corr_d;
  Complex n1s;  // N^{1-s}
  double log_n = 0;
};

EulerMaclaurin euler_maclaurin(Complex s) {
  EulerMaclaurin em;
  auto n = static_cast<long>(std::ceil(10 + 2 * std::abs(s.imag())));
  ComplexKahanSum head, head_d;
  for (long k = 1; k < n; ++k) {
    double lk = std::log(double(k));
    Complex term = std::exp(-s * lk);
    head += term;
    head_d += -lk * term;
  }
  em.head = head.value();
  em.head_d = head_d.value();
  em.log_n = std::log(double(n));
  Complex ns = std::exp(-s * em.log_n);
  em.n1s = ns * double(n);
  Complex corr = 0.5 * ns;
  Complex corr_d = -0.5 * em.log_n * ns;
  // term_k = c_k P_k(s) N^{-s-2k+1}, P_k = s (s+1) ... (s+2k-2)
  Complex poly = s;
  Complex poly_d = 1.0;
  Complex npow = ns / double(n);
  for (std::size_t k = 0; k < kBernoulliOverFactorial.size(); ++k) {
    double c = kBernoulliOverFactorial[k];
    corr += c * poly * npow;
    corr_d += c * (poly_d - em.log_n * poly) * npow;
    double j = 2.0 * k + 1;
    // advance P by the factors (s + j)(s + j + 1)
    Complex f1 = s + j;
    Complex f2 = s + (j + 1);
    poly_d = poly_d * f1 * f2 + poly * (f1 + f2);
    poly = poly * f1 * f2;
    npow /= double(n) * double(n);
  }
  em.corr = corr;
  em.corr_d = corr_d;
  return em;
}

bool is_one(Complex s) { return s.real() == 1.0 && s.imag() == 0.0; }

Complex f_value(Complex s) {
  EulerMaclaurin em = euler_maclaurin(s);
  return (s - 1.0) * (em.head + em.corr) + em.n1s;
}

}  // namespace

Complex riemann_zeta(Complex s) {
  if (is_one(s)) throw PoleError("zeta has a pole at s = 1");
  EulerMaclaurin em = euler_maclaurin(s);
  return em.head + em.n1s / (s - 1.0) + em.corr;
}

Complex zeta_times_s_minus_1(Complex s) { return f_value(s); }

Complex zeta_derivative(Complex s) {
  if (is_one(s)) throw PoleError("zeta' has a pole at s = 1");
  EulerMaclaurin em = euler_maclaurin(s);
  Complex inv = 1.0 / (s - 1.0);
  return em.head_d - em.log_n * em.n1s * inv - em.n1s * inv * inv + em.corr_d;
}

Complex log_zeta_times_s_minus_1(Complex s) {
  if (!(s.real() > 0)) throw DomainError("log((s-1) zeta(s)) requires Re s > 0");
  EulerMaclaurin em = euler_maclaurin(s);
  Complex f = (s - 1.0) * (em.head + em.corr) + em.n1s;
  Complex f_d = (em.head + em.corr) + (s - 1.0) * (em.head_d + em.corr_d) - em.log_n * em.n1s;
  if (std::abs(f) < 1e-8 * std::abs(f_d)) {
    throw SingularityError("s is within 1e-8 of a zero of zeta");
  }
  const double sigma = s.real();
  const double t = s.imag();
  if (t == 0) return std::log(f.real());

  // Follow the argument of f along sigma + i tau, tau from 0 to t.
  double arg = 0;
  Complex prev = f_value(Complex(sigma, 0));
  double tau = 0;
  double dir = t > 0 ? 1 : -1;
  double h = 0.25;
  while (dir * (t - tau) > 0) {
    double next = tau + dir * h;
    if (dir * (next - t) > 0) next = t;
    Complex cur = next == t ? f : f_value(Complex(sigma, next));
    double d = std::arg(cur / prev);
    if (std::abs(d) >= kPi / 2 && h > 1e-9) {
      h *= 0.5;
      continue;
    }
    arg += d;
    prev = cur;
    tau = next;
    h = std::min(0.25, 2 * h);
  }
  return {std::log(std::abs(f)), arg};
}

ZeroList::ZeroList(std::vector<Real> gammas, Real height)
    : gammas_(std::move(gammas)), height_(height) {}

std::size_t ZeroList::count_up_to(Real t) const {
  return static_cast<std::size_t>(std::upper_bound(gammas_.begin(), gammas_.end(), t) -
                                  gammas_.begin());
}

ZeroList ZeroList::first(std::size_t n) const {
  if (n > gammas_.size()) {
    throw RangeError("requested " + std::to_string(n) + " ordinates, list has " +
                     std::to_string(gammas_.size()));
  }
  std::vector<Real> g(gammas_.begin(), gammas_.begin() + static_cast<std::ptrdiff_t>(n));
  Real h = n == 0 ? 0 : g.back();
  return ZeroList(std::move(g), h);
}

ZeroList ZeroList::truncated(Real t) const {
  if (t > height_) {
    throw RangeError("height " + std::to_string(t) + " exceeds zero list height " +
                     std::to_string(height_));
  }
  std::vector<Real> g(gammas_.begin(),
                      gammas_.begin() + static_cast<std::ptrdiff_t>(count_up_to(t)));
  return ZeroList(std::move(g), t);
}

Real riemann_von_mangoldt(Real t) {
  if (t <= 2 * kPi) return 0;
  double a = t / (2 * kPi);
  return std::max(0.0, a * std::log(a) - a + 0.875);
}

ZeroList load_zeros(const std::string& path, Real height) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open zero file '" + path + "'");
  std::vector<Real> gammas;
  std::string line;
  long lineno = 0;
  long blank_since = 0;
  while (std::getline(in, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
      line.pop_back();
    }
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) {
      if (blank_since == 0) blank_since = lineno;
      continue;
    }
    if (blank_since != 0) throw ParseError("blank line inside zero table", blank_since);
    const char* first = line.data() + start;
    const char* last = line.data() + line.size();
    double value = 0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
      throw ParseError("not a decimal ordinate: '" + line + "'", lineno);
    }
    if (!std::isfinite(value) || value <= 0) {
      throw ParseError("ordinate must be positive and finite", lineno);
    }
    if (!gammas.empty() && value <= gammas.back()) {
      throw ParseError("ordinates not strictly ascending", lineno);
    }
    if (gammas.empty() && std::abs(value - 14.134725141734693) > 1e-3) {
      throw ParseError("first ordinate should be 14.1347..., got " + line, lineno);
    }
    gammas.push_back(value);
  }
  if (in.bad()) throw IoError("read failure on '" + path + "'");

  bool explicit_height = height > 0;
  if (!explicit_height) height = gammas.empty() ? 0 : gammas.back();
  gammas.erase(std::upper_bound(gammas.begin(), gammas.end(), height), gammas.end());
  if (!gammas.empty()) {
    double expected = riemann_von_mangoldt(height);
    auto n = static_cast<double>(gammas.size());
    if (n < 0.5 * expected - 10 || n > 1.5 * expected + 10) {
      throw RangeError("zero file '" + path + "' holds " + std::to_string(gammas.size()) +
                       " ordinates up to height " + std::to_string(height) +
                       ", expected about " + std::to_string(expected));
    }
  }
  return ZeroList(std::move(gammas), height);
}

Complex zero_sum(const ZeroList& zeros, Real y, Complex s0, Real t_max) {
  if (t_max > zeros.height()) {
    throw RangeError("T = " + std::to_string(t_max) + " exceeds zero list height " +
                     std::to_string(zeros.height()));
  }
  const double log_y = std::log(y);
  const double root_y = std::sqrt(y);
  const bool real_case = s0.imag() == 0;
  ComplexKahanSum acc;
  KahanSum<double> acc_real;
  for (Real g : zeros.gammas()) {
    if (g > t_max) break;
    Complex rho(0.5, g);
    Complex y_rho = root_y * Complex(std::cos(g * log_y), std::sin(g * log_y));
    Complex a = y_rho / (rho - s0);
    if (real_case) {
      acc_real += 2 * a.real();
    } else {
      Complex b = std::conj(y_rho) / (std::conj(rho) - s0);
      acc += a + b;
    }
  }
  if (real_case) return {acc_real.value(), 0.0};
  return acc.value();
}

}  // namespace smoothnum
