#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pscale/gerber_shiu.hpp"
#include "pscale/scale.hpp"

namespace pscale {

// ---------------------------------------------------------------------------
// Classical (continuously observed) first passage.
// ---------------------------------------------------------------------------

/// E_x[e^{-q tau_b^+}; tau_b^+ < tau_a^-] = W_q(x-a)/W_q(b-a).
double two_sided_exit(const ScaleContext& ctx, double x, double a, double b);

/// E_x[e^{-q tau_0^- + theta X(tau_0^-)}; tau_0^- < tau_b^+].
double severity_absorbed(const ScaleContext& ctx, double x, double b, double theta);

/// Same transform for the process reflected (dividends paid) at b.
double severity_reflected(const ScaleContext& ctx, double x, double b, double theta);

enum class InfiniteHorizonMode { ruin, recovery };

/// ruin:     E_x[e^{-q tau_0^- + theta X(tau_0^-)}]
///           = Z_q(x,theta) - W_q(x) (kappa(theta)-q)/(theta-Phi_q)
/// recovery: E_x[e^{-q tau^{0}}] where tau^{0} is the first return to level 0,
///           equal to the ruin transform at theta = Phi_q:
///           Z_q(x,Phi_q) - W_q(x) kappa'(Phi_q).
/// theta is ignored in recovery mode. Needs q > 0 or Phi_q > 0.
double severity_infinite(const ScaleContext& ctx, double x, double theta, InfiniteHorizonMode mode);

/// E^{[0}_x[e^{-q tau_b^+ - theta R_*(tau_b^+)}] for the process reflected at 0:
/// Z_q(x,theta)/Z_q(b,theta), or W_q(x)/W_q(b) for theta = kInfiniteTheta.
double bailouts_to_level(const ScaleContext& ctx, double x, double b, double theta);

/// E^{b]}_x[e^{-q tau_0^- + theta X(tau_0^-) - vartheta R(tau_0^-)}], R the
/// (undiscounted) dividends paid at b. vartheta = kInfiniteTheta gives the
/// absorbed severity.
double dividends_penalty_classic(const ScaleContext& ctx, double x, double b, double theta,
                                 double vartheta);

enum class Boundary { absorbed, reflected };

/// Gerber-Shiu exit functional with penalty w at ruin, absorbed or reflected at b.
double gs_exit(const ScaleContext& ctx, double x, double b, const Penalty& penalty, Boundary boundary);

/// Density of the q-resolvent of the process killed on exiting [a, b].
double classical_resolvent(const ScaleContext& ctx, double x, double a, double b, double y);

// ---------------------------------------------------------------------------
// Parisian (Poisson(r)-observed) first passage.
// ---------------------------------------------------------------------------

/// Z_{q,r}(x,theta)/Z_{q,r}(b,theta) under Parisian reflection, or
/// W_{q,r}(x)/W_{q,r}(b) = E_x[e^{-q tau_b^+}; tau_b^+ < T_0^-] for theta = kInfiniteTheta.
double parisian_up_exit(const ParisianContext& pctx, double x, double b, double theta);

/// E_x[e^{-q T_0^- + theta X(T_0^-)}; T_0^- < tau_b^+].
double parisian_severity(const ParisianContext& pctx, double x, double b, double theta);

/// Resolvent density on (a, b) of the process killed at tau_b^+ or at the
/// first observation below a:
///   W_{q,r}(x-a) W_q(b-y) / W_{q,r}(b-a) - W_q(x-y).
/// Only the first factor carries the observation rate; inside (a, b) the
/// path is never killed, so the free part is the classical W_q.
double parisian_resolvent(const ParisianContext& pctx, double x, double a, double b, double y);

/// integral_a^b parisian_resolvent(x, a, b, y) dy, from exact antiderivatives.
/// Time spent below a is not included. Since the path is killed at rate r
/// while below a, that part equals parisian_severity(x-a, b-a, 0)/r.
double parisian_resolvent_mass(const ParisianContext& pctx, double x, double a, double b);

/// E^{b]}_x[e^{-q T_0^- + theta X(T_0^-) - vartheta R(T_0^-)}] with Parisian ruin.
double parisian_dividends_penalty(const ParisianContext& pctx, double x, double b, double theta,
                                  double vartheta);

/// The same law assembled from classical scale functions through
/// H(b,theta) = vartheta Z_q(b,theta) + Z_q'(b,theta). Singular at
/// theta = Phi_{q+r}; used as an independent algebraic route.
double parisian_dividends_penalty_h_form(const ParisianContext& pctx, double x, double b, double theta,
                                         double vartheta);

/// Starting from the barrier, the law factors into an Exp(Omega) dividend
/// total and an independent deficit transform.
double parisian_dividends_penalty_at_barrier(const ParisianContext& pctx, double b, double theta,
                                             double vartheta);

/// Omega = W'_{q,r}(b)/W_{q,r}(b).
double omega(const ParisianContext& pctx, double b);

/// E_x[e^{-r T_{<0}}] with T_{<0} the total time spent below zero. Needs a
/// q = 0 context and positive drift.
double time_in_red(const ScaleContext& ctx_q0, double x, double r);

// ---------------------------------------------------------------------------
// Name-based evaluation for front ends.
// ---------------------------------------------------------------------------

struct LawResult {
  double value = 0.0;
  std::map<std::string, double> components;
};

struct LawQuery {
  std::string name;
  double x = 0.0;
  double a = 0.0;
  double b = 1.0;
  double y = 0.5;
  double theta = 0.0;
  double vartheta = 0.0;
  double r_red = 0.0;  // observation rate for time_in_red
  std::optional<Penalty> penalty;
};

const std::vector<std::string>& law_names();
/// Laws whose name starts with "parisian_" need `pctx`.
bool law_needs_parisian(const std::string& name);
LawResult evaluate_law(const ScaleContext& ctx, const ParisianContext* pctx, const LawQuery& query);

}  // namespace pscale
