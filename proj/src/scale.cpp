#include "pscale/scale.hpp"

#include <cmath>
#include <sstream>

#include "pscale/error.hpp"

namespace pscale {

namespace {

void require_theta(double theta) {
  if (!(theta >= 0.0) || std::isinf(theta)) {
    std::ostringstream msg;
    msg << "theta must be finite and >= 0, got " << theta;
    raise(Errc::domain_error, msg.str());
  }
}

ExpMix pure_mix(const std::vector<cplx>& coeffs, const std::vector<cplx>& roots) {
  std::vector<ExpTerm> terms;
  terms.reserve(coeffs.size());
  for (std::size_t j = 0; j < coeffs.size(); ++j) terms.push_back({coeffs[j], roots[j], 0});
  return ExpMix(std::move(terms));
}

}  // namespace

ScaleContext::ScaleContext(LevyModel model, double q) : model_(std::move(model)), q_(q) {
  if (!(q_ >= 0.0) || !std::isfinite(q_)) raise(Errc::domain_error, "discount rate q must be >= 0");
  roots_ = root_set(model_, q_);
  phi_q_ = roots_.front().real();
  residues_.reserve(roots_.size());
  for (const auto& z : roots_) residues_.push_back(1.0 / model_.laplace_exponent_derivative(z));

  W_ = pure_mix(residues_, roots_);
  Wbar_ = W_.antiderivative();
  Z_ = q_ * Wbar_;
  Z_ += ExpMix({}, 1.0);
  Zbar_ = Z_.antiderivative();
  Z1_ = Zbar_ - model_.drift_mean() * Wbar_;
}

double ScaleContext::eval_over_roots(const std::vector<cplx>& coeffs, double x, int deriv) const {
  cplx sum = 0.0;
  for (std::size_t j = 0; j < roots_.size(); ++j) {
    const cplx z = roots_[j];
    cplx term = coeffs[j] * std::exp(z * x);
    for (int k = 0; k < deriv; ++k) term *= z;
    sum += term;
  }
  return sum.real();
}

double ScaleContext::W(double x, int deriv) const {
  if (x < 0.0) return 0.0;
  return eval_over_roots(residues_, x, deriv);
}

double ScaleContext::Wbar(double x) const { return x < 0.0 ? 0.0 : Wbar_.value(x); }

const ExpMix& ScaleContext::plain_mix(ZKind kind) const {
  switch (kind) {
    case ZKind::Z: return Z_;
    case ZKind::Zbar: return Zbar_;
    case ZKind::Z1: return Z1_;
  }
  return Z_;
}

double ScaleContext::plain(double x, ZKind kind, int deriv) const {
  if (x < 0.0) {
    if (kind == ZKind::Z) return deriv == 0 ? 1.0 : 0.0;
    if (deriv == 0) return x;
    return deriv == 1 ? 1.0 : 0.0;
  }
  ExpMix f = plain_mix(kind);
  for (int k = 0; k < deriv; ++k) f = f.derivative();
  return f.value(x);
}

std::vector<cplx> ScaleContext::theta_coefficients(double theta) const {
  std::vector<cplx> c(roots_.size());
  for (std::size_t j = 0; j < roots_.size(); ++j)
    c[j] = residues_[j] * model_.divided_difference(theta, roots_[j]);
  return c;
}

double ScaleContext::Z(double x, double theta, int deriv_x) const {
  require_theta(theta);
  if (x <= 0.0) return std::pow(theta, deriv_x) * std::exp(theta * x);
  return eval_over_roots(theta_coefficients(theta), x, deriv_x);
}

double ScaleContext::Z_dtheta(double x, double theta) const {
  require_theta(theta);
  if (x <= 0.0) return x * std::exp(theta * x);
  std::vector<cplx> c(roots_.size());
  for (std::size_t j = 0; j < roots_.size(); ++j)
    c[j] = residues_[j] * model_.divided_difference_da(theta, roots_[j]);
  return eval_over_roots(c, x, 0);
}

ExpMix ScaleContext::Z_mix(double theta) const {
  require_theta(theta);
  return pure_mix(theta_coefficients(theta), roots_);
}

ParisianContext::ParisianContext(ScaleContext base, double r) : base_(std::move(base)), r_(r) {
  if (!(r_ > 0.0) || !std::isfinite(r_)) raise(Errc::domain_error, "observation rate r must be > 0");
  phi_qr_ = phi(base_.model(), base_.q() + r_);
  w_coeffs_ = theta_coefficients(kInfiniteTheta);
  Wbar_ = pure_mix(w_coeffs_, base_.roots()).antiderivative();
}

ParisianContext::ParisianContext(const LevyModel& model, double q, double r)
    : ParisianContext(ScaleContext(model, q), r) {}

std::vector<cplx> ParisianContext::theta_coefficients(double theta) const {
  const auto& roots = base_.roots();
  const auto& res = base_.residues();
  const LevyModel& m = base_.model();
  std::vector<cplx> c(roots.size());
  if (std::isinf(theta)) {
    for (std::size_t j = 0; j < roots.size(); ++j) c[j] = res[j] * m.divided_difference(phi_qr_, roots[j]);
    return c;
  }
  require_theta(theta);
  const cplx slope = m.divided_difference(theta, phi_qr_);  // (kappa(theta) - q - r)/(theta - Phi_{q+r})
  for (std::size_t j = 0; j < roots.size(); ++j) {
    const cplx d2 = m.second_divided_difference(theta, phi_qr_, roots[j]);
    c[j] = res[j] * (m.divided_difference(phi_qr_, roots[j]) - r_ * d2 / slope);
  }
  return c;
}

double ParisianContext::Z(double x, double theta, int deriv_x) const {
  if (x < 0.0) raise(Errc::domain_error, "Parisian scale functions need x >= 0");
  if (std::isinf(theta)) return base_.eval_over_roots(w_coeffs_, x, deriv_x);
  return base_.eval_over_roots(theta_coefficients(theta), x, deriv_x);
}

ExpMix ParisianContext::Z_mix(double theta) const { return pure_mix(theta_coefficients(theta), base_.roots()); }

double ParisianContext::W(double x, int deriv) const {
  if (x < 0.0) return 0.0;
  return base_.eval_over_roots(w_coeffs_, x, deriv);
}

double ParisianContext::Wbar(double x) const { return x < 0.0 ? 0.0 : Wbar_.value(x); }

double ParisianContext::scriptS(double x, int deriv) const {
  const double q = base_.q();
  if (q == 0.0) raise(Errc::q_zero, "S(x) contains kappa'(0+)/q and needs q > 0");
  const double share = r_ / (q + r_);
  switch (deriv) {
    case 0: return share * (base_.plain(x, ZKind::Zbar) + base_.model().drift_mean() / q);
    case 1: return share * base_.plain(x, ZKind::Z);
    case 2: return share * q * base_.W(x);
    default: raise(Errc::domain_error, "scriptS supports derivative orders 0..2");
  }
}

}  // namespace pscale
