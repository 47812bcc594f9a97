#include "pscale/control.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "pscale/error.hpp"

namespace pscale {

namespace {

void require_barrier(double x, double b) {
  if (!(b >= 0.0)) raise(Errc::domain_error, "barrier b must be >= 0");
  if (!(x >= 0.0 && x <= b)) {
    std::ostringstream msg;
    msg << "x = " << x << " outside [0, " << b << "]";
    raise(Errc::domain_error, msg.str());
  }
}

void require_q(double q, const char* what) {
  if (q == 0.0) raise(Errc::q_zero, std::string(what) + " needs q > 0");
}

double b_max_for(double phi_value) { return phi_value > 0.0 ? 50.0 / phi_value : 500.0; }

}  // namespace

double vf_dividends_classic(const ScaleContext& ctx, double x, double b) {
  require_barrier(x, b);
  return ctx.W(x) / ctx.W(b, 1);
}

double value_definetti(const ScaleContext& ctx, double x, double b, const Penalty& penalty) {
  if (!(x >= 0.0) || !(b >= 0.0)) raise(Errc::domain_error, "value_definetti needs x >= 0 and b >= 0");
  const ExpMix s = build_gerber_shiu(ctx, penalty);
  const double slope = (1.0 - s.derivative()(b)) / ctx.W(b, 1);
  if (x > b) return x - b + s(b) + ctx.W(b) * slope;
  return s(x) + ctx.W(x) * slope;
}

double value_definetti_linear(const ScaleContext& ctx, double x, double b, double k, double K) {
  if (!(x >= 0.0) || !(b >= 0.0)) raise(Errc::domain_error, "value_definetti needs x >= 0 and b >= 0");
  auto s = [&](double y, int d) { return k * ctx.plain(y, ZKind::Z1, d) + K * ctx.plain(y, ZKind::Z, d); };
  const double slope = (1.0 - s(b, 1)) / ctx.W(b, 1);
  if (x > b) return x - b + s(b, 0) + ctx.W(b) * slope;
  return s(x, 0) + ctx.W(x) * slope;
}

double value_slg_classic(const ScaleContext& ctx, double x, double b, double k) {
  require_barrier(x, b);
  const double q = ctx.q();
  require_q(q, "value_slg_classic");
  const double p = ctx.model().drift_mean();
  const double z_prime_b = q * ctx.W(b);
  const double z1_prime_b = ctx.plain(b, ZKind::Z) - p * ctx.W(b);
  const double zx = ctx.plain(x, ZKind::Z);
  return zx / z_prime_b + k * (ctx.plain(x, ZKind::Z1) - zx * z1_prime_b / z_prime_b);
}

double value_parisian(const ParisianContext& pctx, double x, double b, ParisianPart part, double theta) {
  require_barrier(x, b);
  switch (part) {
    case ParisianPart::vf_div:
      return pctx.W(x) / pctx.W(b, 1);
    case ParisianPart::vf_bail:
      require_q(pctx.q(), "bailout values");
      return pctx.Z(x, 0.0) * pctx.scriptS(b) / pctx.Z(b, 0.0) - pctx.scriptS(x);
    case ParisianPart::vs_div:
      return pctx.Z(x, 0.0) / pctx.Z(b, 0.0, 1);
    case ParisianPart::vs_div_theta:
      return pctx.Z(x, theta) / pctx.Z(b, theta, 1);
    case ParisianPart::vs_bail:
      require_q(pctx.q(), "bailout values");
      return pctx.Z(x, 0.0) * pctx.scriptS(b, 1) / pctx.Z(b, 0.0, 1) - pctx.scriptS(x);
  }
  raise(Errc::domain_error, "unknown Parisian value part");
}

double slg_parisian_value(const ParisianContext& pctx, double x, double b, double k) {
  require_barrier(x, b);
  require_q(pctx.q(), "slg_parisian_value");
  return k * pctx.scriptS(x) + pctx.Z(x, 0.0) * (1.0 - k * pctx.scriptS(b, 1)) / pctx.Z(b, 0.0, 1);
}

// ---------------------------------------------------------------------------

BarrierFunction BarrierFunction::definetti_classic(const ScaleContext& ctx, const Penalty& penalty) {
  const ExpMix ds = build_gerber_shiu(ctx, penalty).derivative();
  auto g = [ctx, ds](double b) { return (1.0 - ds(b)) / ctx.W(b, 1); };
  return BarrierFunction(BarrierKind::definetti_classic, g, b_max_for(ctx.phi_q()));
}

BarrierFunction BarrierFunction::slg_classic(const ScaleContext& ctx, double k) {
  require_q(ctx.q(), "the SLG barrier function");
  auto g = [ctx, k](double b) {
    const double num = 1.0 - k * ctx.plain(b, ZKind::Z);
    const double den = ctx.q() * ctx.W(b);
    if (den == 0.0) {
      // b = 0 with sigma > 0: the ratio blows up with the sign of 1 - k
      if (num == 0.0) return 0.0;
      return std::copysign(std::numeric_limits<double>::infinity(), num);
    }
    return num / den;
  };
  return BarrierFunction(BarrierKind::slg_classic, g, b_max_for(ctx.phi_q()));
}

BarrierFunction BarrierFunction::slg_parisian(const ParisianContext& pctx, double k) {
  const double share = pctx.r() / (pctx.q() + pctx.r());
  auto g = [pctx, k, share](double b) {
    return (1.0 - k * share * pctx.base().plain(b, ZKind::Z)) / pctx.Z(b, 0.0, 1);
  };
  return BarrierFunction(BarrierKind::slg_parisian, g, b_max_for(pctx.phi_qr()));
}

double BarrierFunction::operator()(double b) const {
  if (!(b >= 0.0)) raise(Errc::domain_error, "barrier b must be >= 0");
  return g_(b);
}

BarrierSolution optimize_barrier(const BarrierFunction& G, std::optional<double> b_max_opt) {
  constexpr int kIntervals = 1000;
  constexpr double kTol = 1e-8;
  const double b_max = b_max_opt.value_or(G.default_b_max());
  if (!(b_max > 0.0) || !std::isfinite(b_max)) raise(Errc::domain_error, "b_max must be finite and > 0");

  BarrierSolution sol;
  sol.refinement_tol = kTol;
  sol.grid.reserve(kIntervals + 1);
  int best = 0;
  for (int i = 0; i <= kIntervals; ++i) {
    const double b = b_max * i / kIntervals;
    const double g = G(b);
    sol.grid.emplace_back(b, g);
    if (g >= sol.grid[best].second) best = i;  // ties go to the larger b
  }
  if (best == kIntervals) {
    std::ostringstream msg;
    msg << "barrier function still maximal at b_max = " << b_max << "; enlarge the search range";
    raise(Errc::barrier_search, msg.str());
  }

  // Golden section on the two neighbouring cells.
  double lo = sol.grid[best > 0 ? best - 1 : 0].first;
  double hi = sol.grid[best + 1].first;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo), d = lo + inv_phi * (hi - lo);
  double gc = G(c), gd = G(d);
  while (hi - lo > kTol) {
    if (gc > gd) {
      hi = d;
      d = c;
      gd = gc;
      c = hi - inv_phi * (hi - lo);
      gc = G(c);
    } else {
      lo = c;
      c = d;
      gc = gd;
      d = lo + inv_phi * (hi - lo);
      gd = G(d);
    }
  }
  const double b_ref = 0.5 * (lo + hi);
  const double g_ref = G(b_ref);

  sol.b_star = sol.grid[best].first;
  sol.G_at_b_star = sol.grid[best].second;
  if (g_ref > sol.G_at_b_star || (g_ref == sol.G_at_b_star && b_ref > sol.b_star)) {
    sol.b_star = b_ref;
    sol.G_at_b_star = g_ref;
  }
  // A refinement that only crawled away from 0 by the tolerance is the boundary.
  if (sol.b_star <= kTol) {
    const double g0 = G(0.0);
    if (g0 >= sol.G_at_b_star - kTol * std::abs(g0)) {
      sol.b_star = 0.0;
      sol.G_at_b_star = g0;
    }
  }
  sol.is_boundary = sol.b_star == 0.0;
  return sol;
}

// ---------------------------------------------------------------------------

double efficiency_index(const LevyModel& model, double q, double r) {
  if (!(r > 0.0)) raise(Errc::domain_error, "observation rate r must be > 0");
  if (!(q >= 0.0)) raise(Errc::domain_error, "discount rate q must be >= 0");
  const double w0 = model.has_diffusion() ? 0.0 : 1.0 / model.premium();
  const double phi_qr = phi(model, q + r);
  const double den = phi_qr - (r + q) * w0;
  if (den <= 0.0) return std::numeric_limits<double>::infinity();
  return (1.0 + q / r) * (phi_qr - r * w0) / den;
}

double efficiency_index(const ParisianContext& pctx) { return efficiency_index(pctx.model(), pctx.q(), pctx.r()); }

bool is_efficient(const ParisianContext& pctx, double k) {
  const double threshold = efficiency_index(pctx);
  return k <= threshold * (1.0 + 1e-12);
}

double solve_patience(const ParisianContext& pctx, double k) {
  if (is_efficient(pctx, k)) return 0.0;
  const LevyModel& model = pctx.model();
  const double q = pctx.q(), r = pctx.r();
  auto gap = [&](double extra) { return efficiency_index(model, q + extra, r) - k; };

  const double start = q > 0.0 ? q : 1.0;
  const double cap = std::ldexp(start, 60);
  double lo = 0.0, hi = start;
  while (gap(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > cap) raise(Errc::no_solution, "efficiency threshold never reaches k; killing cap exceeded");
  }
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double g = gap(mid);
    if (std::isfinite(g) && std::abs(g) <= 1e-8 * k * 0.5) return mid;
    if (g < 0.0) lo = mid;
    else hi = mid;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
  }
  return hi;
}

}  // namespace pscale
