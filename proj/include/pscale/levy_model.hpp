#pragma once

#include <complex>
#include <vector>

namespace pscale {

using cplx = std::complex<double>;

/// One exponential component of a hyperexponential claim-size law.
struct ClaimPhase {
  double weight;  // mixing probability, in (0, 1]
  double rate;    // exponential rate, > 0
};

/// Spectrally negative Levy process X(t) = x + c t + sigma B(t) - sum of claims,
/// claims arriving at rate lambda with density sum_i p_i mu_i exp(-mu_i y).
///
/// The Laplace exponent is written in uncompensated form,
///   kappa(theta) = sigma2/2 theta^2 + c theta - lambda theta sum_i p_i / (mu_i + theta),
/// which equals the compensated Levy-Khintchine form with drift
/// p = c - lambda E[C] because the claims have finite mean.
class LevyModel {
 public:
  LevyModel(double premium, double sigma2, double intensity, std::vector<ClaimPhase> phases);

  /// Brownian motion with drift, no jumps.
  static LevyModel brownian(double drift, double sigma2);
  /// Cramer-Lundberg process with a single exponential claim law.
  static LevyModel cramer_lundberg(double premium, double intensity, double claim_rate);

  double premium() const noexcept { return premium_; }
  double sigma2() const noexcept { return sigma2_; }
  double intensity() const noexcept { return intensity_; }
  const std::vector<ClaimPhase>& phases() const noexcept { return phases_; }
  bool has_diffusion() const noexcept { return sigma2_ > 0.0; }

  double mean_claim() const noexcept { return mean_claim_; }
  /// p = E_0[X(1)] = kappa'(0+).
  double drift_mean() const noexcept { return drift_mean_; }

  cplx laplace_exponent(cplx theta) const;
  double laplace_exponent(double theta) const;
  cplx laplace_exponent_derivative(cplx theta) const;
  double laplace_exponent_derivative(double theta) const;

  /// (kappa(a) - kappa(b)) / (a - b), equal to kappa'(a) when a == b.
  /// Evaluated in closed form so that it stays accurate near a == b.
  cplx divided_difference(cplx a, cplx b) const;
  /// d/da of divided_difference(a, b).
  cplx divided_difference_da(cplx a, cplx b) const;
  /// Second divided difference of kappa at (a, b, c).
  cplx second_divided_difference(cplx a, cplx b, cplx c) const;

 private:
  void check_pole(cplx theta) const;

  double premium_;
  double sigma2_;
  double intensity_;
  std::vector<ClaimPhase> phases_;
  double mean_claim_ = 0.0;
  double drift_mean_ = 0.0;
};

/// Phi_s = sup{theta >= 0 : kappa(theta) = s}.
double phi(const LevyModel& model, double s);

/// Every root of kappa(theta) = s, as roots of (kappa(theta) - s) prod_i (mu_i + theta).
/// The root equal to Phi_s is returned first; complex roots come in exact
/// conjugate pairs. Throws DegenerateRoots when two roots coincide.
std::vector<cplx> root_set(const LevyModel& model, double s);

}  // namespace pscale
