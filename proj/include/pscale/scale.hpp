#pragma once

#include <limits>
#include <vector>

#include "pscale/exp_mix.hpp"
#include "pscale/levy_model.hpp"

namespace pscale {

/// theta = +infinity selects W_{q,r} in the Parisian evaluators and the
/// "no injections allowed" law in the bailout transforms.
inline constexpr double kInfiniteTheta = std::numeric_limits<double>::infinity();

enum class ZKind { Z, Zbar, Z1 };

/// Scale functions of one model at one discount rate q.
///
/// W_q(x) = sum_j exp(theta_j x) / kappa'(theta_j) over the roots theta_j of
/// kappa = q. Because kappa(theta) - q = (theta - theta_j) D(theta, theta_j)
/// with D the divided difference of kappa, the second scale function is the
/// pure exponential mixture
///   Z_q(x, theta) = sum_j D(theta, theta_j) exp(theta_j x) / kappa'(theta_j),   x >= 0,
/// which is the Dickson-Hipp integral of W in closed form with the e^{theta x}
/// parts cancelled analytically.
class ScaleContext {
 public:
  ScaleContext(LevyModel model, double q);

  const LevyModel& model() const noexcept { return model_; }
  double q() const noexcept { return q_; }
  double phi_q() const noexcept { return phi_q_; }
  const std::vector<cplx>& roots() const noexcept { return roots_; }
  /// 1/kappa'(theta_j), aligned with roots().
  const std::vector<cplx>& residues() const noexcept { return residues_; }
  const ExpMix& W_mix() const noexcept { return W_; }

  /// W_q^{(deriv)}(x); zero for x < 0. For sigma > 0 the x = 0 derivative is
  /// the right limit.
  double W(double x, int deriv = 0) const;
  double Wbar(double x) const;

  /// Z_q(x), Zbar_q(x) = int_0^x Z_q, Z_{1,q}(x) = Zbar_q(x) - p Wbar_q(x),
  /// and their x-derivatives. For x < 0 the exterior values 1, x, x are used.
  double plain(double x, ZKind kind, int deriv = 0) const;
  const ExpMix& plain_mix(ZKind kind) const;

  /// Z_q(x, theta) and its x-derivatives; exp(theta x) for x <= 0.
  double Z(double x, double theta, int deriv_x = 0) const;
  /// d/dtheta Z_q(x, theta).
  double Z_dtheta(double x, double theta) const;
  ExpMix Z_mix(double theta) const;

  /// Coefficients c_j so that sum_j c_j theta_j^k exp(theta_j x) is the k-th
  /// x-derivative of a pure mixture over the roots.
  double eval_over_roots(const std::vector<cplx>& coeffs, double x, int deriv) const;

 private:
  std::vector<cplx> theta_coefficients(double theta) const;

  LevyModel model_;
  double q_;
  std::vector<cplx> roots_;
  std::vector<cplx> residues_;
  double phi_q_;
  ExpMix W_, Wbar_, Z_, Zbar_, Z1_;
};

/// Scale functions for Poisson(r)-observed (Parisian) ruin at discount q.
///
///   Z_{q,r}(x, theta) = [r Z_q(x,theta) + (q - kappa(theta)) Z_q(x, Phi_{q+r})] / (q + r - kappa(theta))
///   W_{q,r}(x)        = Z_q(x, Phi_{q+r})
///
/// The blend is evaluated as Z_q(x, Phi_{q+r}) - r Y(x, theta) with Y built
/// from second divided differences of kappa, which removes the singularity at
/// theta = Phi_{q+r} without a special case.
class ParisianContext {
 public:
  ParisianContext(ScaleContext base, double r);
  ParisianContext(const LevyModel& model, double q, double r);

  const ScaleContext& base() const noexcept { return base_; }
  const LevyModel& model() const noexcept { return base_.model(); }
  double q() const noexcept { return base_.q(); }
  double r() const noexcept { return r_; }
  double phi_qr() const noexcept { return phi_qr_; }

  /// Z_{q,r}(x, theta) and x-derivatives, x >= 0; theta = kInfiniteTheta gives W_{q,r}.
  double Z(double x, double theta, int deriv_x = 0) const;
  ExpMix Z_mix(double theta) const;

  /// W_{q,r}^{(deriv)}(x), zero for x < 0.
  double W(double x, int deriv = 0) const;
  double Wbar(double x) const;

  /// S(x) = r/(q+r) (Zbar_q(x) + kappa'(0+)/q): expected discounted Parisian
  /// bailouts building block. Requires q > 0.
  double scriptS(double x, int deriv = 0) const;

 private:
  std::vector<cplx> theta_coefficients(double theta) const;

  ScaleContext base_;
  double r_;
  double phi_qr_;
  std::vector<cplx> w_coeffs_;
  ExpMix Wbar_;
};

}  // namespace pscale
