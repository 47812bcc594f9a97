#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "pscale/gerber_shiu.hpp"
#include "pscale/scale.hpp"

namespace pscale {

// ---------------------------------------------------------------------------
// Value functions of barrier strategies.
// ---------------------------------------------------------------------------

/// Expected discounted dividends until ruin under a barrier at b: W_q(x)/W_q'(b).
double vf_dividends_classic(const ScaleContext& ctx, double x, double b);

/// Dividends until ruin minus a Gerber-Shiu penalty w(X(tau)) at ruin:
///   S_w(x) + W_q(x) (1 - S_w'(b)) / W_q'(b)   for x <= b,
/// and x - b + value(b) above the barrier (lump sum down to b).
double value_definetti(const ScaleContext& ctx, double x, double b, const Penalty& penalty);

/// value_definetti for w(y) = k y + K, assembled directly from Z_{1,q} and Z_q
/// rather than through the generic penalty path.
double value_definetti_linear(const ScaleContext& ctx, double x, double b, double k, double K);

/// Doubly reflected process, dividends at b minus k times the bailouts at 0:
///   Z_q(x)/(q W_q(b)) + k (Z_{1,q}(x) - Z_q(x) Z'_{1,q}(b)/(q W_q(b))),
/// the bracket being minus the expected discounted bailouts.
double value_slg_classic(const ScaleContext& ctx, double x, double b, double k);

enum class ParisianPart {
  vf_div,        // dividends until Parisian ruin
  vf_bail,       // Parisian bailouts until the first passage above b
  vs_div,        // dividends, Parisian reflection below 0
  vs_div_theta,  // joint dividend/bailout transform with injection weight theta
  vs_bail,       // bailouts, reflection at b
};

double value_parisian(const ParisianContext& pctx, double x, double b, ParisianPart part, double theta = 0.0);

/// k S(x) + Z_{q,r}(x) (1 - k S'(b)) / Z'_{q,r}(b): dividends at b minus k
/// times the Parisian bailouts.
double slg_parisian_value(const ParisianContext& pctx, double x, double b, double k);

// ---------------------------------------------------------------------------
// Barrier functions and the last-global-maximum search.
// ---------------------------------------------------------------------------

enum class BarrierKind { definetti_classic, slg_classic, slg_parisian };

/// G(b) whose last global maximiser is the candidate optimal dividend barrier.
///   definetti_classic: (1 - S_w'(b)) / W_q'(b)
///   slg_classic:       (1 - k Z_q(b)) / (q W_q(b))
///   slg_parisian:      (1 - k r/(q+r) Z_q(b)) / Z'_{q,r}(b)
class BarrierFunction {
 public:
  static BarrierFunction definetti_classic(const ScaleContext& ctx, const Penalty& penalty);
  static BarrierFunction slg_classic(const ScaleContext& ctx, double k);
  static BarrierFunction slg_parisian(const ParisianContext& pctx, double k);

  double operator()(double b) const;
  BarrierKind kind() const noexcept { return kind_; }
  /// 50/Phi with Phi = Phi_q (classical) or Phi_{q+r} (Parisian).
  double default_b_max() const noexcept { return default_b_max_; }

 private:
  BarrierFunction(BarrierKind kind, std::function<double(double)> g, double b_max)
      : kind_(kind), g_(std::move(g)), default_b_max_(b_max) {}

  BarrierKind kind_;
  std::function<double(double)> g_;
  double default_b_max_;
};

struct BarrierSolution {
  double b_star = 0.0;
  double G_at_b_star = 0.0;
  bool is_boundary = false;
  std::vector<std::pair<double, double>> grid;
  double refinement_tol = 1e-8;
};

/// Scans 1000 intervals of [0, b_max], keeps the last grid maximiser and
/// refines it by golden section. Throws BarrierSearch when the maximum sits at
/// b_max, since the search range was then too short.
BarrierSolution optimize_barrier(const BarrierFunction& G, std::optional<double> b_max = std::nullopt);

// ---------------------------------------------------------------------------
// Efficiency of Parisian bailouts.
// ---------------------------------------------------------------------------

/// k(q,r) = (1 + q/r)(Phi_{q+r} - r W_q(0+)) / (Phi_{q+r} - (r+q) W_q(0+)),
/// +infinity when the denominator is not positive.
double efficiency_index(const ParisianContext& pctx);
double efficiency_index(const LevyModel& model, double q, double r);
bool is_efficient(const ParisianContext& pctx, double k);

/// Smallest extra killing q' >= 0 with k <= k(q + q', r).
double solve_patience(const ParisianContext& pctx, double k);

}  // namespace pscale
