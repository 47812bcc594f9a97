#pragma once

#include <functional>
#include <variant>

#include "pscale/exp_mix.hpp"
#include "pscale/scale.hpp"

namespace pscale {

/// w(x) = exp(theta x) on x <= 0.
struct ExponentialPenalty {
  double theta;
};
/// w(x) = slope x + intercept on x <= 0.
struct LinearPenalty {
  double slope;
  double intercept;
};
/// w(x) = value on x <= 0.
struct ConstantPenalty {
  double value;
};
/// Arbitrary penalty. Accepted by the type so callers can express it, but
/// no closed form exists and build_gerber_shiu rejects it.
struct CustomPenalty {
  std::function<double(double)> w;
};

using Penalty = std::variant<ExponentialPenalty, LinearPenalty, ConstantPenalty, CustomPenalty>;

/// w(x) for x <= 0.
double penalty_value(const Penalty& penalty, double x);

/// Smooth Gerber-Shiu function S_w: the q-harmonic function on [0, inf)
/// matching w below zero.
///   exponential(theta) -> Z_q(., theta)
///   linear(k, K)       -> k Z_{1,q} + K Z_q
///   constant(K)        -> K Z_q
ExpMix build_gerber_shiu(const ScaleContext& ctx, const Penalty& penalty);

}  // namespace pscale
