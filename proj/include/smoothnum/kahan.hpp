#pragma once

#include <complex>

namespace smoothnum {

/// Compensated (Neumaier) accumulator. Order of additions fixes the result.
template <typename T>
class KahanSum {
 public:
  KahanSum() = default;
  explicit KahanSum(T init) : sum_(init) {}

  void add(T x) {
    T t = sum_ + x;
    if (abs_(sum_) >= abs_(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  KahanSum& operator+=(T x) {
    add(x);
    return *this;
  }

  T value() const { return sum_ + comp_; }

 private:
  static double abs_(double v) { return v < 0 ? -v : v; }
  static long double abs_(long double v) { return v < 0 ? -v : v; }
  T sum_{};
  T comp_{};
};

/// Complex Neumaier sum, real and imaginary parts compensated separately.
class ComplexKahanSum {
 public:
  void add(std::complex<double> z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  ComplexKahanSum& operator+=(std::complex<double> z) {
    add(z);
    return *this;
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  KahanSum<double> re_;
  KahanSum<double> im_;
};

}  // namespace smoothnum
