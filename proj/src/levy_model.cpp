#include "pscale/levy_model.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pscale/error.hpp"

namespace pscale {

namespace {

using Poly = std::vector<double>;  // ascending coefficients

Poly multiply(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

void add_into(Poly& acc, const Poly& p, double scale) {
  if (acc.size() < p.size()) acc.resize(p.size(), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) acc[i] += scale * p[i];
}

// (kappa(theta) - s) * prod_i (mu_i + theta)
Poly root_polynomial(const LevyModel& m, double s) {
  Poly all{1.0};
  for (const auto& ph : m.phases()) all = multiply(all, Poly{ph.rate, 1.0});

  Poly out = multiply(Poly{-s, m.premium(), 0.5 * m.sigma2()}, all);
  for (std::size_t i = 0; i < m.phases().size(); ++i) {
    Poly others{0.0, 1.0};  // theta
    for (std::size_t k = 0; k < m.phases().size(); ++k)
      if (k != i) others = multiply(others, Poly{m.phases()[k].rate, 1.0});
    add_into(out, others, -m.intensity() * m.phases()[i].weight);
  }
  while (out.size() > 1 && out.back() == 0.0) out.pop_back();
  return out;
}

std::vector<cplx> polynomial_roots(const Poly& p) {
  const int degree = static_cast<int>(p.size()) - 1;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
  for (int i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < degree; ++i) companion(i, degree - 1) = -p[i] / p[degree];
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success)
    raise(Errc::convergence_failure, "companion eigenvalue solver failed");
  std::vector<cplx> roots(degree);
  for (int i = 0; i < degree; ++i) roots[i] = solver.eigenvalues()[i];
  return roots;
}

}  // namespace

LevyModel::LevyModel(double premium, double sigma2, double intensity, std::vector<ClaimPhase> phases)
    : premium_(premium), sigma2_(sigma2), intensity_(intensity), phases_(std::move(phases)) {
  if (!std::isfinite(premium_) || !std::isfinite(sigma2_) || !std::isfinite(intensity_))
    raise(Errc::invalid_model, "model parameters must be finite");
  if (sigma2_ < 0.0) raise(Errc::invalid_model, "sigma2 must be nonnegative");
  if (intensity_ < 0.0) raise(Errc::invalid_model, "claim intensity must be nonnegative");
  if (!(sigma2_ > 0.0 || premium_ > 0.0))
    raise(Errc::invalid_model, "need sigma2 > 0 or a positive premium rate");
  if (intensity_ > 0.0 && phases_.empty())
    raise(Errc::invalid_model, "positive claim intensity requires claim phases");

  double total_weight = 0.0;
  for (const auto& ph : phases_) {
    if (!(ph.weight > 0.0 && ph.weight <= 1.0))
      raise(Errc::invalid_model, "phase weights must lie in (0, 1]");
    if (!(ph.rate > 0.0) || !std::isfinite(ph.rate))
      raise(Errc::invalid_model, "phase rates must be positive");
    total_weight += ph.weight;
    mean_claim_ += ph.weight / ph.rate;
  }
  if (!phases_.empty() && std::abs(total_weight - 1.0) > 1e-12)
    raise(Errc::invalid_model, "phase weights must sum to 1");
  for (std::size_t i = 0; i < phases_.size(); ++i)
    for (std::size_t j = i + 1; j < phases_.size(); ++j) {
      const double a = phases_[i].rate, b = phases_[j].rate;
      if (std::abs(a - b) <= 1e-9 * std::max(a, b))
        raise(Errc::invalid_model, "phase rates must be pairwise distinct");
    }
  if (intensity_ == 0.0) {
    // Without claims the phases are irrelevant and would only add spurious poles.
    phases_.clear();
    mean_claim_ = 0.0;
  }
  drift_mean_ = premium_ - intensity_ * mean_claim_;
}

LevyModel LevyModel::brownian(double drift, double sigma2) { return LevyModel(drift, sigma2, 0.0, {}); }

LevyModel LevyModel::cramer_lundberg(double premium, double intensity, double claim_rate) {
  return LevyModel(premium, 0.0, intensity, {{1.0, claim_rate}});
}

void LevyModel::check_pole(cplx theta) const {
  for (const auto& ph : phases_)
    if (std::abs(theta + ph.rate) < 1e-12) {
      std::ostringstream msg;
      msg << "theta = " << theta << " is a pole of the Laplace exponent";
      raise(Errc::pole_at_theta, msg.str());
    }
}

cplx LevyModel::laplace_exponent(cplx theta) const {
  check_pole(theta);
  cplx jump = 0.0;
  for (const auto& ph : phases_) jump += ph.weight / (ph.rate + theta);
  return 0.5 * sigma2_ * theta * theta + premium_ * theta - intensity_ * theta * jump;
}

double LevyModel::laplace_exponent(double theta) const { return laplace_exponent(cplx(theta)).real(); }

cplx LevyModel::laplace_exponent_derivative(cplx theta) const {
  check_pole(theta);
  cplx jump = 0.0;
  for (const auto& ph : phases_) jump += ph.weight * ph.rate / ((ph.rate + theta) * (ph.rate + theta));
  return sigma2_ * theta + premium_ - intensity_ * jump;
}

double LevyModel::laplace_exponent_derivative(double theta) const {
  return laplace_exponent_derivative(cplx(theta)).real();
}

cplx LevyModel::divided_difference(cplx a, cplx b) const {
  check_pole(a);
  check_pole(b);
  cplx jump = 0.0;
  for (const auto& ph : phases_) jump += ph.weight * ph.rate / ((ph.rate + a) * (ph.rate + b));
  return 0.5 * sigma2_ * (a + b) + premium_ - intensity_ * jump;
}

cplx LevyModel::divided_difference_da(cplx a, cplx b) const {
  check_pole(a);
  check_pole(b);
  cplx jump = 0.0;
  for (const auto& ph : phases_)
    jump += ph.weight * ph.rate / ((ph.rate + a) * (ph.rate + a) * (ph.rate + b));
  return 0.5 * sigma2_ + intensity_ * jump;
}

cplx LevyModel::second_divided_difference(cplx a, cplx b, cplx c) const {
  check_pole(a);
  check_pole(b);
  check_pole(c);
  cplx jump = 0.0;
  for (const auto& ph : phases_)
    jump += ph.weight * ph.rate / ((ph.rate + a) * (ph.rate + b) * (ph.rate + c));
  return 0.5 * sigma2_ + intensity_ * jump;
}

double phi(const LevyModel& model, double s) {
  if (!(s >= 0.0) || !std::isfinite(s)) raise(Errc::domain_error, "phi requires s >= 0");
  const double p = model.drift_mean();
  if (s == 0.0 && p >= 0.0) return 0.0;

  constexpr int kMaxIterations = 200;
  auto f = [&](double t) { return model.laplace_exponent(t) - s; };
  auto df = [&](double t) { return model.laplace_exponent_derivative(t); };

  // kappa is convex on [0, inf): the wanted root lies to the right of the
  // minimiser, where kappa is increasing.
  double lo = 0.0;
  if (p < 0.0) {
    double a = 0.0, b = 1.0;
    int guard = 0;
    while (df(b) <= 0.0) {
      a = b;
      b *= 2.0;
      if (++guard > kMaxIterations) raise(Errc::convergence_failure, "cannot bracket argmin of kappa");
    }
    for (int i = 0; i < kMaxIterations && b - a > 1e-15 * b; ++i) {
      const double mid = 0.5 * (a + b);
      (df(mid) > 0.0 ? b : a) = mid;
    }
    lo = b;
  }
  double hi = std::max(1.0, 2.0 * lo);
  for (int guard = 0; f(hi) <= 0.0; ++guard) {
    if (guard > kMaxIterations) raise(Errc::convergence_failure, "cannot bracket Phi");
    lo = hi;
    hi *= 2.0;
  }

  // Newton from the right endpoint decreases monotonically onto the root of
  // a convex increasing function; bisection guards against round-off.
  double x = hi;
  for (int i = 0; i < kMaxIterations; ++i) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    if (fx > 0.0) hi = x; else lo = x;
    double next = x - fx / df(x);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, x)) return next;
    x = next;
  }
  raise(Errc::convergence_failure, "Phi iteration did not converge in 200 steps");
}

std::vector<cplx> root_set(const LevyModel& model, double s) {
  if (!(s >= 0.0) || !std::isfinite(s)) raise(Errc::domain_error, "root_set requires s >= 0");
  std::vector<cplx> roots = polynomial_roots(root_polynomial(model, s));

  for (auto& z : roots) {
    for (int it = 0; it < 3; ++it) {
      const cplx fz = model.laplace_exponent(z) - s;
      const cplx next = z - fz / model.laplace_exponent_derivative(z);
      if (!std::isfinite(next.real()) || !std::isfinite(next.imag()) ||
          !(std::abs(model.laplace_exponent(next) - s) < std::abs(fz)))
        break;
      z = next;
    }
    if (std::abs(z.imag()) < 1e-12 * std::max(1.0, std::abs(z))) z = cplx(z.real(), 0.0);
  }

  const double principal = phi(model, s);
  auto nearest = [&](double target) {
    return std::min_element(roots.begin(), roots.end(), [&](cplx a, cplx b) {
      return std::abs(a - target) < std::abs(b - target);
    });
  };
  auto it = nearest(principal);
  *it = principal;
  std::iter_swap(roots.begin(), it);
  if (s == 0.0 && principal != 0.0) *nearest(0.0) = 0.0;  // kappa(0) = 0 exactly

  std::sort(roots.begin() + 1, roots.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
  });
  // exact conjugate pairing
  for (std::size_t i = 1; i < roots.size(); ++i) {
    if (roots[i].imag() <= 0.0) continue;
    for (std::size_t j = 1; j < roots.size(); ++j)
      if (j != i && roots[j].imag() < 0.0 && std::abs(roots[j] - std::conj(roots[i])) < 1e-6 * std::abs(roots[i])) {
        const cplx mid(0.5 * (roots[i].real() + roots[j].real()), 0.5 * (roots[i].imag() - roots[j].imag()));
        roots[i] = mid;
        roots[j] = std::conj(mid);
      }
  }

  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (std::abs(roots[i] - roots[j]) < 1e-8 * std::max(1.0, std::abs(roots[i]))) {
        std::ostringstream msg;
        msg << "roots " << roots[i] << " and " << roots[j] << " of kappa(theta) = " << s
            << " coincide; perturb the model";
        raise(Errc::degenerate_roots, msg.str());
      }
  return roots;
}

}  // namespace pscale
