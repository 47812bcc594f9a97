#include "pscale/exp_mix.hpp"

#include <cmath>

namespace pscale {

namespace {

double int_power(double x, int n) {
  double out = 1.0;
  for (int i = 0; i < n; ++i) out *= x;
  return out;
}

double factorial(int n) {
  double out = 1.0;
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}

}  // namespace

ExpMix::ExpMix(std::vector<ExpTerm> terms, double offset) : terms_(std::move(terms)), offset_(offset) {}

cplx ExpMix::value_complex(double x) const {
  cplx sum = offset_;
  for (const auto& t : terms_) {
    const cplx e = t.rate == cplx(0.0) ? cplx(1.0) : std::exp(t.rate * x);
    sum += t.weight * int_power(x, t.power) * e;
  }
  return sum;
}

double ExpMix::value(double x) const { return value_complex(x).real(); }

ExpMix ExpMix::derivative() const {
  std::vector<ExpTerm> out;
  out.reserve(2 * terms_.size());
  for (const auto& t : terms_) {
    if (t.power > 0) out.push_back({t.weight * double(t.power), t.rate, t.power - 1});
    if (t.rate != cplx(0.0)) out.push_back({t.weight * t.rate, t.rate, t.power});
  }
  return ExpMix(std::move(out), 0.0);
}

ExpMix ExpMix::antiderivative() const {
  std::vector<ExpTerm> out;
  cplx constant = 0.0;
  if (offset_ != 0.0) out.push_back({offset_, 0.0, 1});
  for (const auto& t : terms_) {
    if (std::abs(t.rate) < kConfluentTolerance) {
      out.push_back({t.weight / double(t.power + 1), 0.0, t.power + 1});
      continue;
    }
    // integral_0^x y^n e^{rho y} dy
    //   = sum_k (-1)^{n-k} n!/(k! rho^{n-k+1}) x^k e^{rho x} + (-1)^{n+1} n!/rho^{n+1}
    const int n = t.power;
    const double nf = factorial(n);
    for (int k = 0; k <= n; ++k) {
      const double sign = ((n - k) % 2 == 0) ? 1.0 : -1.0;
      out.push_back({t.weight * sign * nf / (factorial(k) * std::pow(t.rate, n - k + 1)), t.rate, k});
    }
    constant += t.weight * (((n + 1) % 2 == 0) ? 1.0 : -1.0) * nf / std::pow(t.rate, n + 1);
  }
  // conjugate pairs make the imaginary part of the constant vanish
  return ExpMix(std::move(out), constant.real());
}

ExpMix ExpMix::dickson_hipp(double theta) const {
  std::vector<ExpTerm> shifted;
  shifted.reserve(terms_.size() + 1);
  auto snap = [](cplx r) { return std::abs(r) < kConfluentTolerance ? cplx(0.0) : r; };
  if (offset_ != 0.0) shifted.push_back({offset_, snap(-theta), 0});
  for (const auto& t : terms_) shifted.push_back({t.weight, snap(t.rate - theta), t.power});
  return ExpMix(std::move(shifted), 0.0).antiderivative();
}

ExpMix& ExpMix::operator+=(const ExpMix& other) {
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  offset_ += other.offset_;
  return *this;
}

ExpMix& ExpMix::operator*=(double scale) {
  for (auto& t : terms_) t.weight *= scale;
  offset_ *= scale;
  return *this;
}

}  // namespace pscale
