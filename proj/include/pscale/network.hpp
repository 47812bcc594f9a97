#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pscale/levy_model.hpp"
#include "pscale/mc.hpp"

namespace pscale {

/// Subsidiary i: premium c_i and claims from `model`; it keeps a share
/// alpha_i (the retention) of each claim and the central branch (CB) pays the rest.
struct Subsidiary {
  LevyModel model;
  double retention;
};

/// Central-branch network. The CB has premium c_0 and, optionally, claims of its own.
struct NetworkSpec {
  std::vector<Subsidiary> subsidiaries;
  double cb_premium = 0.0;
  double cb_intensity = 0.0;
  std::vector<ClaimPhase> cb_phases;
  double q = 0.0;
};

struct NetworkCheck {
  bool cheap = false;
  double gamma = 0.0;    // sum_i alpha_i/(1 - alpha_i)
  double c_tilde = 0.0;  // gamma sum_i c_i (1 - alpha_i)/alpha_i
};

/// Throws RetentionOutOfRange unless every alpha_i lies in (0, 1).
NetworkCheck network_check(const NetworkSpec& spec);

/// u_i = u_0 alpha_i/(1 - alpha_i), the point of the claims line above u_0.
std::vector<double> network_claims_line(const NetworkSpec& spec, double u0);

struct NetworkValue {
  MCEstimate value;         // direct accounting of all dividends paid in the network
  MCEstimate lemma_value;   // one-dimensional integrand on the same paths
  MCEstimate cb_dividends;  // the CB's own barrier dividends
  double max_path_gap = 0.0;
  std::size_t bailouts = 0;  // subsidiaries observed below zero while the CB was solvent
  std::size_t n_paths = 0;
};

/// Claims-line policy with the CB paying dividends at barrier b. Between claims
/// each subsidiary cashes whatever premium keeps it on the claims line; after
/// a claim the others take lump sums back to the line. Paths stop at CB ruin or
/// at T = (40 + ln(1 + u0 + b))/q unless a horizon is given.
///
/// The lemma integrand is
///   dR_0 + c~ dt - gamma dX_0 - sum_i (gamma (1-alpha_i)/alpha_i - 1) dX_i
/// with X_i(t) = c_i t - alpha_i S_i(t) the subsidiary's retained process and
/// X_0(t) = c_0 t - S_0(t) - R_0(t) the CB's stand-alone reserve after its own
/// dividends (reinsurance payments excluded).
///
/// Throws NotCheap when c_0 > c_i (1-alpha_i)/alpha_i for some i, and
/// SigmaUnsupported for diffusive subsidiaries.
NetworkValue network_value_mc(const NetworkSpec& spec, double u0, double b, std::size_t n_paths,
                              std::uint64_t seed, std::optional<double> horizon = std::nullopt,
                              unsigned threads = 0);

}  // namespace pscale
