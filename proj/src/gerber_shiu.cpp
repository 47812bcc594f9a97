#include "pscale/gerber_shiu.hpp"

#include <cmath>

#include "pscale/error.hpp"

namespace pscale {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace

double penalty_value(const Penalty& penalty, double x) {
  return std::visit(overloaded{
                        [&](const ExponentialPenalty& p) { return std::exp(p.theta * x); },
                        [&](const LinearPenalty& p) { return p.slope * x + p.intercept; },
                        [&](const ConstantPenalty& p) { return p.value; },
                        [&](const CustomPenalty& p) { return p.w(x); },
                    },
                    penalty);
}

ExpMix build_gerber_shiu(const ScaleContext& ctx, const Penalty& penalty) {
  return std::visit(
      overloaded{
          [&](const ExponentialPenalty& p) {
            if (!(p.theta >= 0.0)) raise(Errc::unsupported_penalty, "exponential penalty needs theta >= 0");
            return ctx.Z_mix(p.theta);
          },
          [&](const LinearPenalty& p) {
            return p.slope * ctx.plain_mix(ZKind::Z1) + p.intercept * ctx.plain_mix(ZKind::Z);
          },
          [&](const ConstantPenalty& p) { return p.value * ctx.plain_mix(ZKind::Z); },
          [&](const CustomPenalty&) -> ExpMix {
            raise(Errc::unsupported_penalty,
                  "only exponential, linear and constant penalties have a closed-form Gerber-Shiu function");
          },
      },
      penalty);
}

}  // namespace pscale
