#include "pscale/passage_laws.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "pscale/error.hpp"

namespace pscale {

namespace {

void require_interval(double x, double a, double b) {
  if (!(a < b)) raise(Errc::domain_error, "need a < b");
  if (!(x >= a && x <= b)) {
    std::ostringstream msg;
    msg << "x = " << x << " outside [" << a << ", " << b << "]";
    raise(Errc::domain_error, msg.str());
  }
}

void require_barrier(double x, double b) {
  if (!(b >= 0.0)) raise(Errc::domain_error, "barrier b must be >= 0");
  if (!(x >= 0.0 && x <= b)) {
    std::ostringstream msg;
    msg << "x = " << x << " outside [0, " << b << "]";
    raise(Errc::domain_error, msg.str());
  }
}

}  // namespace

double two_sided_exit(const ScaleContext& ctx, double x, double a, double b) {
  require_interval(x, a, b);
  return ctx.W(x - a) / ctx.W(b - a);
}

double severity_absorbed(const ScaleContext& ctx, double x, double b, double theta) {
  require_barrier(x, b);
  return ctx.Z(x, theta) - ctx.W(x) / ctx.W(b) * ctx.Z(b, theta);
}

double severity_reflected(const ScaleContext& ctx, double x, double b, double theta) {
  require_barrier(x, b);
  return ctx.Z(x, theta) - ctx.W(x) * ctx.Z(b, theta, 1) / ctx.W(b, 1);
}

double severity_infinite(const ScaleContext& ctx, double x, double theta, InfiniteHorizonMode mode) {
  if (!(x >= 0.0)) raise(Errc::domain_error, "x must be >= 0");
  if (ctx.q() == 0.0 && ctx.phi_q() == 0.0)
    raise(Errc::q_zero, "infinite-horizon transforms need q > 0 or Phi_q > 0");
  const double phi_q = ctx.phi_q();
  const double target = mode == InfiniteHorizonMode::recovery ? phi_q : theta;
  // (kappa(theta) - q)/(theta - Phi_q), continuous through theta = Phi_q
  const double slope = ctx.model().divided_difference(target, phi_q).real();
  return ctx.Z(x, target) - ctx.W(x) * slope;
}

double bailouts_to_level(const ScaleContext& ctx, double x, double b, double theta) {
  require_barrier(x, b);
  if (std::isinf(theta)) return ctx.W(x) / ctx.W(b);
  return ctx.Z(x, theta) / ctx.Z(b, theta);
}

double dividends_penalty_classic(const ScaleContext& ctx, double x, double b, double theta,
                                 double vartheta) {
  require_barrier(x, b);
  if (!(vartheta >= 0.0)) raise(Errc::domain_error, "vartheta must be >= 0");
  if (std::isinf(vartheta)) return severity_absorbed(ctx, x, b, theta);
  const double num = ctx.Z(b, theta, 1) + vartheta * ctx.Z(b, theta);
  const double den = ctx.W(b, 1) + vartheta * ctx.W(b);
  return ctx.Z(x, theta) - ctx.W(x) * num / den;
}

double gs_exit(const ScaleContext& ctx, double x, double b, const Penalty& penalty, Boundary boundary) {
  require_barrier(x, b);
  const ExpMix s = build_gerber_shiu(ctx, penalty);
  if (boundary == Boundary::absorbed) return s(x) - ctx.W(x) * s(b) / ctx.W(b);
  return s(x) - ctx.W(x) * s.derivative()(b) / ctx.W(b, 1);
}

double classical_resolvent(const ScaleContext& ctx, double x, double a, double b, double y) {
  require_interval(x, a, b);
  if (!(y > a && y < b)) raise(Errc::domain_error, "y must lie in (a, b)");
  return ctx.W(x - a) * ctx.W(b - y) / ctx.W(b - a) - ctx.W(x - y);
}

double parisian_up_exit(const ParisianContext& pctx, double x, double b, double theta) {
  require_barrier(x, b);
  return pctx.Z(x, theta) / pctx.Z(b, theta);
}

double parisian_severity(const ParisianContext& pctx, double x, double b, double theta) {
  require_barrier(x, b);
  return pctx.Z(x, theta) - pctx.W(x) / pctx.W(b) * pctx.Z(b, theta);
}

double parisian_resolvent(const ParisianContext& pctx, double x, double a, double b, double y) {
  require_interval(x, a, b);
  if (!(y > a && y < b)) raise(Errc::domain_error, "y must lie in (a, b)");
  const ScaleContext& ctx = pctx.base();
  return pctx.W(x - a) * ctx.W(b - y) / pctx.W(b - a) - ctx.W(x - y);
}

double parisian_resolvent_mass(const ParisianContext& pctx, double x, double a, double b) {
  require_interval(x, a, b);
  const ScaleContext& ctx = pctx.base();
  return pctx.W(x - a) * ctx.Wbar(b - a) / pctx.W(b - a) - ctx.Wbar(x - a);
}

double parisian_dividends_penalty(const ParisianContext& pctx, double x, double b, double theta,
                                  double vartheta) {
  require_barrier(x, b);
  if (!(vartheta >= 0.0)) raise(Errc::domain_error, "vartheta must be >= 0");
  if (std::isinf(vartheta)) return parisian_severity(pctx, x, b, theta);
  const double num = pctx.Z(b, theta, 1) + vartheta * pctx.Z(b, theta);
  const double den = pctx.W(b, 1) + vartheta * pctx.W(b);
  return pctx.Z(x, theta) - pctx.W(x) * num / den;
}

double parisian_dividends_penalty_h_form(const ParisianContext& pctx, double x, double b, double theta,
                                         double vartheta) {
  require_barrier(x, b);
  const ScaleContext& ctx = pctx.base();
  const double q = ctx.q(), r = pctx.r(), phi_qr = pctx.phi_qr();
  auto h = [&](double t) { return vartheta * ctx.Z(b, t) + ctx.Z(b, t, 1); };
  const double kappa = ctx.model().laplace_exponent(theta);
  return (ctx.Z(x, theta) - ctx.Z(x, phi_qr) * h(theta) / h(phi_qr)) * r / (r + q - kappa);
}

double parisian_dividends_penalty_at_barrier(const ParisianContext& pctx, double b, double theta,
                                             double vartheta) {
  const ScaleContext& ctx = pctx.base();
  const double q = ctx.q(), r = pctx.r();
  const double om = omega(pctx, b);
  const double kappa = ctx.model().laplace_exponent(theta);
  const double deficit = ctx.Z(b, theta) - (theta * ctx.Z(b, theta) + (q - kappa) * ctx.W(b)) / om;
  return om / (om + vartheta) * deficit * r / (r + q - kappa);
}

double omega(const ParisianContext& pctx, double b) {
  if (!(b >= 0.0)) raise(Errc::domain_error, "barrier b must be >= 0");
  return pctx.W(b, 1) / pctx.W(b);
}

double time_in_red(const ScaleContext& ctx_q0, double x, double r) {
  if (ctx_q0.q() != 0.0) raise(Errc::domain_error, "time_in_red needs a q = 0 scale context");
  if (!(r > 0.0)) raise(Errc::domain_error, "observation rate r must be > 0");
  if (!(x >= 0.0)) raise(Errc::domain_error, "x must be >= 0");
  const double p = ctx_q0.model().drift_mean();
  if (!(p > 0.0)) raise(Errc::nonpositive_drift, "time in red is infinite unless the drift is positive");
  const double phi_r = phi(ctx_q0.model(), r);
  return p * phi_r / r * ctx_q0.Z(x, phi_r);
}

// ---------------------------------------------------------------------------

namespace {

using LawFn = std::function<LawResult(const ScaleContext&, const ParisianContext*, const LawQuery&)>;

struct LawEntry {
  std::string name;
  LawFn fn;
};

const ParisianContext& need(const ParisianContext* p, const std::string& name) {
  if (p == nullptr) raise(Errc::domain_error, "law '" + name + "' needs an observation rate r");
  return *p;
}

const Penalty& need_penalty(const LawQuery& q) {
  if (!q.penalty) raise(Errc::unsupported_penalty, "law '" + q.name + "' needs a penalty");
  return *q.penalty;
}

const std::vector<LawEntry>& law_table() {
  static const std::vector<LawEntry> table = {
      {"two_sided",
       [](const ScaleContext& c, const ParisianContext*, const LawQuery& q) {
         return LawResult{two_sided_exit(c, q.x, q.a, q.b), {{"W(x-a)", c.W(q.x - q.a)}, {"W(b-a)", c.W(q.b - q.a)}}};
       }},
      {"severity_absorbed",
       [](const ScaleContext& c, const ParisianContext*, const LawQuery& q) {
         return LawResult{severity_absorbed(c, q.x, q.b, q.theta),
                          {{"Z(x,theta)", c.Z(q.x, q.theta)}, {"W(x)/W(b)", c.W(q.x) / c.W(q.b)}}};
       }},
      {"severity_reflected",
       [](const ScaleContext& c, const ParisianContext*, const LawQuery& q) {
         return LawResult{severity_reflected(c, q.x, q.b, q.theta),
                          {{"Z(x,theta)", c.Z(q.x, q.theta)}, {"W(x)/W'(b)", c.W(q.x) / c.W(q.b, 1)}}};
       }},
      {"ruin_transform",
       [](const ScaleContext& c, const ParisianContext*, const LawQuery& q) {
         return LawResult{severity_infinite(c, q.x, q.theta, InfiniteHorizonMode::ruin), {{"Phi_q", c.phi_q()}}};
       }},
      {"recovery_transform",
       [](const ScaleContext& c, const ParisianContext*, const LawQuery& q) {
         return LawResult{severity_infinite(c, q.x, q.theta, InfiniteHorizonMode::recovery),
                          {{"Phi_q", c.phi_q()}}};
       }},
      {"bailouts_to_level",
       [](const ScaleContext& c, const ParisianContext*, const LawQuery& q) {
         return LawResult{bailouts_to_level(c, q.x, q.b, q.theta), {}};
       }},
      {"dividends_penalty",
       [](const ScaleContext& c, const ParisianContext*, const LawQuery& q) {
         return LawResult{dividends_penalty_classic(c, q.x, q.b, q.theta, q.vartheta), {}};
       }},
      {"gs_exit_absorbed",
       [](const ScaleContext& c, const ParisianContext*, const LawQuery& q) {
         return LawResult{gs_exit(c, q.x, q.b, need_penalty(q), Boundary::absorbed), {}};
       }},
      {"gs_exit_reflected",
       [](const ScaleContext& c, const ParisianContext*, const LawQuery& q) {
         return LawResult{gs_exit(c, q.x, q.b, need_penalty(q), Boundary::reflected), {}};
       }},
      {"resolvent",
       [](const ScaleContext& c, const ParisianContext*, const LawQuery& q) {
         return LawResult{classical_resolvent(c, q.x, q.a, q.b, q.y), {}};
       }},
      {"time_in_red",
       [](const ScaleContext& c, const ParisianContext*, const LawQuery& q) {
         return LawResult{time_in_red(c, q.x, q.r_red), {{"p", c.model().drift_mean()}}};
       }},
      {"parisian_up_exit",
       [](const ScaleContext&, const ParisianContext* p, const LawQuery& q) {
         const auto& pc = need(p, q.name);
         return LawResult{parisian_up_exit(pc, q.x, q.b, q.theta), {{"Phi_q+r", pc.phi_qr()}}};
       }},
      {"parisian_severity",
       [](const ScaleContext&, const ParisianContext* p, const LawQuery& q) {
         const auto& pc = need(p, q.name);
         return LawResult{parisian_severity(pc, q.x, q.b, q.theta), {{"Phi_q+r", pc.phi_qr()}}};
       }},
      {"parisian_resolvent",
       [](const ScaleContext&, const ParisianContext* p, const LawQuery& q) {
         return LawResult{parisian_resolvent(need(p, q.name), q.x, q.a, q.b, q.y), {}};
       }},
      {"parisian_resolvent_mass",
       [](const ScaleContext&, const ParisianContext* p, const LawQuery& q) {
         return LawResult{parisian_resolvent_mass(need(p, q.name), q.x, q.a, q.b), {}};
       }},
      {"parisian_dividends_penalty",
       [](const ScaleContext&, const ParisianContext* p, const LawQuery& q) {
         const auto& pc = need(p, q.name);
         return LawResult{parisian_dividends_penalty(pc, q.x, q.b, q.theta, q.vartheta),
                          {{"Omega(b)", omega(pc, q.b)}}};
       }},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& law_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& e : law_table()) out.push_back(e.name);
    return out;
  }();
  return names;
}

bool law_needs_parisian(const std::string& name) { return name.rfind("parisian_", 0) == 0; }

LawResult evaluate_law(const ScaleContext& ctx, const ParisianContext* pctx, const LawQuery& query) {
  for (const auto& e : law_table())
    if (e.name == query.name) return e.fn(ctx, pctx, query);
  std::string msg = "unknown law '" + query.name + "'; valid laws:";
  for (const auto& n : law_names()) msg += " " + n;
  raise(Errc::domain_error, msg);
}

}  // namespace pscale
