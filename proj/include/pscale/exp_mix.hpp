#pragma once

#include <complex>
#include <vector>

namespace pscale {

using cplx = std::complex<double>;

/// weight * x^power * exp(rate * x)
struct ExpTerm {
  cplx weight;
  cplx rate;
  int power = 0;
};

/// A real function on x >= 0 held exactly as
///   offset + sum_j w_j x^{n_j} exp(rho_j x),
/// with complex terms occurring in conjugate pairs. Scale functions of models
/// with rational Laplace exponent are of this form, and so is everything
/// obtained from them by differentiation, integration from 0, and the
/// Dickson-Hipp transform.
class ExpMix {
 public:
  /// Rates closer than this to zero are treated as exactly zero when
  /// integrating (the confluent case).
  static constexpr double kConfluentTolerance = 1e-10;

  ExpMix() = default;
  explicit ExpMix(std::vector<ExpTerm> terms, double offset = 0.0);

  double operator()(double x) const { return value(x); }
  double value(double x) const;
  cplx value_complex(double x) const;

  ExpMix derivative() const;
  /// x -> integral_0^x f(y) dy
  ExpMix antiderivative() const;
  /// x -> integral_0^x exp(-theta y) f(y) dy
  ExpMix dickson_hipp(double theta) const;

  ExpMix& operator+=(const ExpMix& other);
  ExpMix& operator*=(double scale);
  friend ExpMix operator+(ExpMix a, const ExpMix& b) { return a += b; }
  friend ExpMix operator-(ExpMix a, ExpMix b) { return a += (b *= -1.0); }
  friend ExpMix operator*(double s, ExpMix a) { return a *= s; }

  const std::vector<ExpTerm>& terms() const noexcept { return terms_; }
  double offset() const noexcept { return offset_; }

 private:
  std::vector<ExpTerm> terms_;
  double offset_ = 0.0;
};

}  // namespace pscale
