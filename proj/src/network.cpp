#include "pscale/network.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pscale/error.hpp"

namespace pscale {

NetworkCheck network_check(const NetworkSpec& spec) {
  NetworkCheck out;
  out.cheap = true;
  double cost_sum = 0.0;
  for (std::size_t i = 0; i < spec.subsidiaries.size(); ++i) {
    const auto& s = spec.subsidiaries[i];
    const double a = s.retention;
    if (!(a > 0.0 && a < 1.0)) {
      std::ostringstream msg;
      msg << "retention of subsidiary " << i << " is " << a << ", must lie in (0, 1)";
      raise(Errc::retention_out_of_range, msg.str());
    }
    const double ratio = (1.0 - a) / a;
    out.gamma += a / (1.0 - a);
    cost_sum += s.model.premium() * ratio;
    if (spec.cb_premium > s.model.premium() * ratio) out.cheap = false;
  }
  out.c_tilde = out.gamma * cost_sum;
  return out;
}

std::vector<double> network_claims_line(const NetworkSpec& spec, double u0) {
  network_check(spec);
  std::vector<double> u;
  u.reserve(spec.subsidiaries.size());
  for (const auto& s : spec.subsidiaries) u.push_back(u0 * s.retention / (1.0 - s.retention));
  return u;
}

namespace {

double draw_phase(const std::vector<ClaimPhase>& phases, CounterRng& rng) {
  double u = rng.uniform();
  std::size_t i = 0;
  for (; i + 1 < phases.size(); ++i) {
    if (u < phases[i].weight) break;
    u -= phases[i].weight;
  }
  return rng.exponential(phases[i].rate);
}

struct NetworkPath {
  double direct = 0.0;
  double lemma = 0.0;
  double cb_dividends = 0.0;
  std::size_t bailouts = 0;
};

}  // namespace

NetworkValue network_value_mc(const NetworkSpec& spec, double u0, double b, std::size_t n_paths,
                              std::uint64_t seed, std::optional<double> horizon, unsigned threads) {
  const NetworkCheck chk = network_check(spec);
  if (!chk.cheap) raise(Errc::not_cheap, "claims-line policy needs c_0 <= c_i (1-alpha_i)/alpha_i for every i");
  for (const auto& s : spec.subsidiaries)
    if (s.model.has_diffusion()) raise(Errc::sigma_unsupported, "network simulation needs sigma = 0 subsidiaries");
  if (!(u0 >= 0.0) || !(b >= 0.0)) raise(Errc::domain_error, "u0 and b must be >= 0");
  if (!(spec.q >= 0.0)) raise(Errc::domain_error, "q must be >= 0");
  if (spec.cb_intensity > 0.0 && spec.cb_phases.empty())
    raise(Errc::invalid_model, "CB claims need at least one phase");
  if (n_paths == 0) raise(Errc::domain_error, "need at least one path");

  const double q = spec.q;
  double T;
  if (horizon) T = *horizon;
  else if (q > 0.0) T = (40.0 + std::log1p(u0 + b)) / q;
  else raise(Errc::horizon_required, "q = 0 needs an explicit horizon");

  const std::size_t I = spec.subsidiaries.size();
  std::vector<double> g(I), lemma_claim(I);
  for (std::size_t i = 0; i < I; ++i) {
    const double a = spec.subsidiaries[i].retention;
    g[i] = a / (1.0 - a);
    lemma_claim[i] = chk.gamma / g[i] - 1.0;  // coefficient of -dX_i
  }
  double total_rate = spec.cb_intensity;
  for (const auto& s : spec.subsidiaries) total_rate += s.model.intensity();
  const double c0 = spec.cb_premium;
  double sub_premia = 0.0;
  double lemma_drift = chk.c_tilde;  // c~ - sum_i (gamma/g_i - 1) c_i
  for (std::size_t i = 0; i < I; ++i) {
    sub_premia += spec.subsidiaries[i].model.premium();
    lemma_drift -= lemma_claim[i] * spec.subsidiaries[i].model.premium();
  }

  auto disc = [q](double t1, double t2) {
    if (q == 0.0) return t2 - t1;
    return (std::exp(-q * t1) - std::exp(-q * t2)) / q;
  };

  std::vector<NetworkPath> paths(n_paths);
  parallel_paths(
      n_paths,
      [&](std::size_t idx) {
        CounterRng rng(seed, idx);
        NetworkPath out;
        double t = 0.0, x0 = u0;
        std::vector<double> u(I);
        if (x0 > b) {
          // Lump sums down to the barrier, network-wide.
          out.direct += (x0 - b) * (1.0 + chk.gamma);
          out.cb_dividends += x0 - b;
          out.lemma += (x0 - b) * (1.0 + chk.gamma);
          x0 = b;
        }
        for (std::size_t i = 0; i < I; ++i) u[i] = g[i] * x0;

        auto run_segment = [&](double t1, double t2) {
          if (t2 <= t1) return;
          double t_hit = x0 < b ? (c0 > 0.0 ? t1 + (b - x0) / c0 : t2) : t1;
          t_hit = std::min(t_hit, t2);
          // Off the barrier: the CB keeps its premium, subsidiaries cash the excess.
          const double d_off = disc(t1, t_hit);
          out.direct += (sub_premia - chk.gamma * c0) * d_off;
          out.lemma += (lemma_drift - chk.gamma * c0) * d_off;
          // Pinned at b: everything is paid out.
          const double d_on = disc(t_hit, t2);
          out.direct += (c0 + sub_premia) * d_on;
          out.cb_dividends += c0 * d_on;
          out.lemma += (c0 + lemma_drift) * d_on;
          x0 = t_hit < t2 ? b : std::min(b, x0 + c0 * (t2 - t1));
          for (std::size_t i = 0; i < I; ++i) u[i] = g[i] * x0;
        };

        for (;;) {
          const double t_next = t + rng.exponential(total_rate);
          if (t_next >= T) {
            run_segment(t, T);
            break;
          }
          run_segment(t, t_next);
          t = t_next;
          const double w = std::exp(-q * t);

          double pick = rng.uniform() * total_rate;
          if (pick < spec.cb_intensity) {
            const double size = draw_phase(spec.cb_phases, rng);
            x0 -= size;
            if (x0 < 0.0) break;
            out.lemma += w * chk.gamma * size;
          } else {
            pick -= spec.cb_intensity;
            std::size_t i = 0;
            for (; i + 1 < I; ++i) {
              if (pick < spec.subsidiaries[i].model.intensity()) break;
              pick -= spec.subsidiaries[i].model.intensity();
            }
            const auto& sub = spec.subsidiaries[i];
            const double size = draw_phase(sub.model.phases(), rng);
            u[i] -= sub.retention * size;
            x0 -= (1.0 - sub.retention) * size;
            if (x0 < 0.0) break;
            out.lemma += w * lemma_claim[i] * sub.retention * size;
          }
          for (std::size_t j = 0; j < I; ++j) {
            const double target = g[j] * x0;
            if (u[j] < -1e-9) ++out.bailouts;
            out.direct += w * (u[j] - target);
            u[j] = target;
          }
        }
        paths[idx] = out;
        return out.direct;
      },
      threads);

  NetworkValue res;
  res.n_paths = n_paths;
  std::vector<double> direct(n_paths), lemma(n_paths), cb(n_paths);
  for (std::size_t i = 0; i < n_paths; ++i) {
    direct[i] = paths[i].direct;
    lemma[i] = paths[i].lemma;
    cb[i] = paths[i].cb_dividends;
    res.max_path_gap = std::max(res.max_path_gap, std::abs(direct[i] - lemma[i]));
    res.bailouts += paths[i].bailouts;
  }
  res.value = summarize(direct);
  res.lemma_value = summarize(lemma);
  res.cb_dividends = summarize(cb);
  const double tail = q > 0.0 ? std::exp(-q * T) * (c0 + sub_premia + chk.c_tilde) / q : 0.0;
  res.value.tail_bound = res.lemma_value.tail_bound = tail;
  res.value.horizon = res.lemma_value.horizon = res.cb_dividends.horizon = T;
  return res;
}

}  // namespace pscale
