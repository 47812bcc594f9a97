#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pscale/levy_model.hpp"
#include "pscale/rng.hpp"

namespace pscale {

// Exact event-driven simulation of Cramer-Lundberg paths (sigma = 0). Between
// claims the path is linear, so first passages, dividends and discounted
// integrals are all computed in closed form on each segment.

enum class UpperMode { none, absorb, reflect };
enum class LowerMode { none, classical_absorb, classical_reflect, parisian_absorb, parisian_reflect };

struct PathConfig {
  LevyModel model;
  double x0 = 0.0;
  UpperMode upper = UpperMode::none;
  double b = 0.0;  // used unless upper == none
  LowerMode lower = LowerMode::none;
  double r = 0.0;  // observation rate for the Parisian modes
  double q = 0.0;
  std::optional<double> horizon;
  /// Dividends are additionally weighted by exp(-theta R_*(t)), R_* the
  /// injections so far; the weighted total lands in PathRecord.disc_dividends_killed.
  double dividend_kill_theta = 0.0;
  bool record_events = false;
};

enum class StopCause { up_exit, ruin, horizon };

struct PathEvent {
  enum class Kind { claim, observation, injection, dividend, up_exit, ruin, horizon };
  Kind kind;
  double t;
  double amount;  // claim size, injection, lump dividend; 0 otherwise
  double level;   // surplus right after the event
};

struct PathRecord {
  StopCause cause = StopCause::horizon;
  double stop_time = 0.0;
  double final_level = 0.0;  // X at the stop; the undershoot when cause == ruin
  double total_claims = 0.0;
  double total_injections = 0.0;  // R_*
  double total_dividends = 0.0;   // R
  double disc_injections = 0.0;   // int e^{-qt} dR_*
  double disc_dividends = 0.0;    // int e^{-qt} dR
  double disc_dividends_killed = 0.0;
  double time_below_zero = 0.0;
  std::size_t n_claims = 0;
  std::size_t n_observations = 0;
  std::vector<PathEvent> events;
};

/// Throws SigmaUnsupported for sigma > 0 and HorizonRequired when nothing
/// would stop the path: q = 0 (or an explicit request) with neither an
/// absorbing boundary nor a horizon.
PathRecord simulate_path(const PathConfig& config, CounterRng& rng);

enum class FunctionalKind {
  up_exit,          // e^{-q tau_b^+ - theta R_*}; theta = inf means no injections allowed
  severity,         // e^{-q tau + theta X(tau)} on ruin
  dividends,        // int e^{-qt} dR
  bailouts,         // int e^{-qt} dR_*
  time_in_red,      // e^{-r_red T_{<0}}
  joint,            // e^{-q tau + theta X(tau) - vartheta R(tau)} on ruin
  slg_value,        // int e^{-qt} dR - k int e^{-qt} dR_*
  dividends_killed, // int e^{-qt - theta R_*(t)} dR
};

struct Functional {
  FunctionalKind kind = FunctionalKind::up_exit;
  double theta = 0.0;
  double vartheta = 0.0;
  double r_red = 0.0;
  double k = 0.0;
};

const std::vector<std::string>& functional_names();
FunctionalKind functional_from_name(const std::string& name);

double functional_value(const Functional& f, const PathRecord& path, const PathConfig& config);

struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_paths = 0;
  double ci95_lo = 0.0;
  double ci95_hi = 0.0;
  /// Deterministic bound on the error from truncating at the horizon.
  double tail_bound = 0.0;
  double horizon = 0.0;  // 0 when the paths stopped naturally
};

/// Worker count: PARISIAN_SCALE_THREADS if set (>= 1), else the hardware concurrency.
unsigned mc_thread_count();

/// Evaluates `per_path(i)` for i in [0, n) on the worker pool and returns the
/// values in path-index order.
std::vector<double> parallel_paths(std::size_t n, const std::function<double(std::size_t)>& per_path,
                                   unsigned threads = 0);

/// Mean and standard error with a pairwise summation in index order.
MCEstimate summarize(const std::vector<double>& values);

/// Path i uses stream (seed, i). When q > 0 and no horizon is given the paths
/// are truncated at T = (40 + ln(1 + x0 + b))/q and the tail bound is attached.
MCEstimate estimate(PathConfig config, const Functional& f, std::size_t n_paths, std::uint64_t seed,
                    unsigned threads = 0);

/// Lundberg exponent R > 0 with kappa(-R) = 0, so that P_x(ever below 0) <= e^{-R x}.
/// Needs sigma = 0 and positive drift.
double lundberg_exponent(const LevyModel& model);

}  // namespace pscale
