#include "pscale/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "pscale/error.hpp"

namespace pscale {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_parisian(LowerMode m) { return m == LowerMode::parisian_absorb || m == LowerMode::parisian_reflect; }
bool is_absorbing(LowerMode m) { return m == LowerMode::classical_absorb || m == LowerMode::parisian_absorb; }

bool stops_naturally(const PathConfig& c) {
  return c.upper == UpperMode::absorb || (c.upper == UpperMode::reflect && is_absorbing(c.lower));
}

double draw_claim(const LevyModel& m, CounterRng& rng) {
  const auto& phases = m.phases();
  double u = rng.uniform();
  std::size_t i = 0;
  for (; i + 1 < phases.size(); ++i) {
    if (u < phases[i].weight) break;
    u -= phases[i].weight;
  }
  return rng.exponential(phases[i].rate);
}

}  // namespace

PathRecord simulate_path(const PathConfig& cfg, CounterRng& rng) {
  const LevyModel& m = cfg.model;
  if (m.has_diffusion()) raise(Errc::sigma_unsupported, "exact path simulation needs sigma = 0");
  if (!(cfg.x0 >= 0.0)) raise(Errc::domain_error, "x0 must be >= 0");
  if (!(cfg.q >= 0.0)) raise(Errc::domain_error, "q must be >= 0");
  if (cfg.upper != UpperMode::none && !(cfg.b >= 0.0)) raise(Errc::domain_error, "barrier b must be >= 0");
  if (is_parisian(cfg.lower) && !(cfg.r > 0.0)) raise(Errc::domain_error, "Parisian modes need r > 0");
  if (!cfg.horizon && !stops_naturally(cfg))
    raise(Errc::horizon_required, "this configuration has no absorbing stop; give a horizon T");

  const double c = m.premium();
  const double q = cfg.q;
  const double T = cfg.horizon.value_or(kInf);
  const double b = cfg.upper == UpperMode::none ? kInf : cfg.b;

  PathRecord rec;
  double t = 0.0, x = cfg.x0;

  auto disc = [q](double t1, double t2) {
    if (q == 0.0) return t2 - t1;
    return (std::exp(-q * t1) - std::exp(-q * t2)) / q;
  };
  auto log_event = [&](PathEvent::Kind kind, double amount) {
    if (cfg.record_events) rec.events.push_back({kind, t, amount, x});
  };
  auto stop = [&](StopCause cause) {
    rec.cause = cause;
    rec.stop_time = t;
    rec.final_level = x;
    log_event(cause == StopCause::up_exit ? PathEvent::Kind::up_exit
              : cause == StopCause::ruin  ? PathEvent::Kind::ruin
                                          : PathEvent::Kind::horizon,
              0.0);
    return rec;
  };
  auto pay_lump = [&](double amount) {
    rec.total_dividends += amount;
    const double d = std::exp(-q * t) * amount;
    rec.disc_dividends += d;
    rec.disc_dividends_killed += d * std::exp(-cfg.dividend_kill_theta * rec.total_injections);
    log_event(PathEvent::Kind::dividend, amount);
  };
  auto pay_stream = [&](double t1, double t2) {
    if (t2 <= t1) return;
    rec.total_dividends += c * (t2 - t1);
    const double d = c * disc(t1, t2);
    rec.disc_dividends += d;
    rec.disc_dividends_killed += d * std::exp(-cfg.dividend_kill_theta * rec.total_injections);
  };
  auto inject = [&]() {
    const double amount = -x;
    x = 0.0;
    rec.total_injections += amount;
    rec.disc_injections += std::exp(-q * t) * amount;
    log_event(PathEvent::Kind::injection, amount);
  };
  // Lebesgue time below zero while drifting up from x over [t1, t2].
  auto red_time = [&](double x_start, double t1, double t2) {
    if (x_start >= 0.0) return 0.0;
    if (c <= 0.0) return t2 - t1;
    return std::min(t2 - t1, -x_start / c);
  };

  if (x >= b) {
    if (cfg.upper == UpperMode::absorb) return stop(StopCause::up_exit);
    if (x > b) {
      const double lump = x - b;
      x = b;
      pay_lump(lump);
    }
  }

  double next_claim = rng.exponential(m.intensity());
  double next_obs = is_parisian(cfg.lower) ? rng.exponential(cfg.r) : kInf;

  for (;;) {
    const double t_e = std::min({next_claim, next_obs, T});
    const bool reaches_b = cfg.upper == UpperMode::absorb && x < b && c > 0.0;
    if (!std::isfinite(t_e) && !reaches_b)
      raise(Errc::horizon_required, "path would run forever; give a horizon T");

    if (x < b) {
      const double t_hit = c > 0.0 ? t + (b - x) / c : kInf;
      if (t_hit <= t_e) {
        rec.time_below_zero += red_time(x, t, t_hit);
        x = b;
        if (cfg.upper == UpperMode::absorb) {
          t = t_hit;
          return stop(StopCause::up_exit);
        }
        pay_stream(t_hit, t_e);
      } else {
        rec.time_below_zero += red_time(x, t, t_e);
        x += c * (t_e - t);
      }
    } else {
      pay_stream(t, t_e);  // pinned at the reflecting barrier
    }
    t = t_e;

    if (T <= next_claim && T <= next_obs) return stop(StopCause::horizon);

    if (next_claim <= next_obs) {
      const double size = draw_claim(m, rng);
      x -= size;
      rec.total_claims += size;
      ++rec.n_claims;
      log_event(PathEvent::Kind::claim, size);
      next_claim = t + rng.exponential(m.intensity());
      if (x < 0.0) {
        if (cfg.lower == LowerMode::classical_absorb) return stop(StopCause::ruin);
        if (cfg.lower == LowerMode::classical_reflect) inject();
      }
    } else {
      ++rec.n_observations;
      log_event(PathEvent::Kind::observation, 0.0);
      next_obs = t + rng.exponential(cfg.r);
      if (x < 0.0) {
        if (cfg.lower == LowerMode::parisian_absorb) return stop(StopCause::ruin);
        if (cfg.lower == LowerMode::parisian_reflect) inject();
      }
    }
  }
}

// ---------------------------------------------------------------------------

namespace {

struct FunctionalName {
  const char* name;
  FunctionalKind kind;
};

constexpr FunctionalName kFunctionals[] = {
    {"up_exit", FunctionalKind::up_exit},
    {"severity", FunctionalKind::severity},
    {"dividends", FunctionalKind::dividends},
    {"bailouts", FunctionalKind::bailouts},
    {"time_in_red", FunctionalKind::time_in_red},
    {"joint", FunctionalKind::joint},
    {"slg_value", FunctionalKind::slg_value},
    {"dividends_killed", FunctionalKind::dividends_killed},
};

}  // namespace

const std::vector<std::string>& functional_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& f : kFunctionals) out.emplace_back(f.name);
    return out;
  }();
  return names;
}

FunctionalKind functional_from_name(const std::string& name) {
  for (const auto& f : kFunctionals)
    if (name == f.name) return f.kind;
  std::string msg = "unknown functional '" + name + "'; valid functionals:";
  for (const auto& n : functional_names()) msg += " " + n;
  raise(Errc::domain_error, msg);
}

double functional_value(const Functional& f, const PathRecord& p, const PathConfig& cfg) {
  const double q = cfg.q;
  switch (f.kind) {
    case FunctionalKind::up_exit: {
      if (p.cause != StopCause::up_exit) return 0.0;
      const double base = std::exp(-q * p.stop_time);
      if (std::isinf(f.theta)) return p.total_injections == 0.0 ? base : 0.0;
      return base * std::exp(-f.theta * p.total_injections);
    }
    case FunctionalKind::severity:
      if (p.cause != StopCause::ruin) return 0.0;
      return std::exp(-q * p.stop_time + f.theta * p.final_level);
    case FunctionalKind::dividends:
      return p.disc_dividends;
    case FunctionalKind::bailouts:
      return p.disc_injections;
    case FunctionalKind::time_in_red:
      return std::exp(-f.r_red * p.time_below_zero);
    case FunctionalKind::joint: {
      if (p.cause != StopCause::ruin) return 0.0;
      const double base = std::exp(-q * p.stop_time + f.theta * p.final_level);
      if (std::isinf(f.vartheta)) return p.total_dividends == 0.0 ? base : 0.0;
      return base * std::exp(-f.vartheta * p.total_dividends);
    }
    case FunctionalKind::slg_value:
      return p.disc_dividends - f.k * p.disc_injections;
    case FunctionalKind::dividends_killed:
      return p.disc_dividends_killed;
  }
  return 0.0;
}

// ---------------------------------------------------------------------------

unsigned mc_thread_count() {
  if (const char* env = std::getenv("PARISIAN_SCALE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::vector<double> parallel_paths(std::size_t n, const std::function<double(std::size_t)>& per_path,
                                   unsigned threads) {
  std::vector<double> values(n);
  const unsigned workers = std::max(1u, std::min<unsigned>(threads == 0 ? mc_thread_count() : threads,
                                                           static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  constexpr std::size_t kChunk = 1024;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&]() {
    try {
      for (;;) {
        const std::size_t start = next.fetch_add(kChunk);
        if (start >= n) return;
        const std::size_t end = std::min(n, start + kChunk);
        for (std::size_t i = start; i < end; ++i) values[i] = per_path(i);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(n);
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return values;
}

namespace {

double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 16) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

}  // namespace

MCEstimate summarize(const std::vector<double>& values) {
  MCEstimate est;
  est.n_paths = values.size();
  if (values.empty()) return est;
  const double n = static_cast<double>(values.size());
  est.mean = pairwise_sum(values.data(), values.size()) / n;
  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) sq[i] = (values[i] - est.mean) * (values[i] - est.mean);
  const double var = values.size() > 1 ? pairwise_sum(sq.data(), sq.size()) / (n - 1.0) : 0.0;
  est.std_error = std::sqrt(var / n);
  est.ci95_lo = est.mean - 1.96 * est.std_error;
  est.ci95_hi = est.mean + 1.96 * est.std_error;
  return est;
}

double lundberg_exponent(const LevyModel& model) {
  if (model.has_diffusion()) raise(Errc::sigma_unsupported, "Lundberg exponent implemented for sigma = 0");
  if (!(model.drift_mean() > 0.0)) raise(Errc::nonpositive_drift, "Lundberg exponent needs positive drift");
  if (model.intensity() == 0.0) return kInf;
  double mu_min = kInf;
  for (const auto& ph : model.phases()) mu_min = std::min(mu_min, ph.rate);
  // kappa(-R)/R = -c + lambda sum p_i/(mu_i - R) increases from -p to +inf on (0, mu_min)
  auto g = [&](double R) {
    double s = 0.0;
    for (const auto& ph : model.phases()) s += ph.weight / (ph.rate - R);
    return model.intensity() * s - model.premium();
  };
  double lo = 0.0, hi = mu_min;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * mu_min; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  return lo;
}

MCEstimate estimate(PathConfig config, const Functional& f, std::size_t n_paths, std::uint64_t seed,
                    unsigned threads) {
  if (n_paths == 0) raise(Errc::domain_error, "need at least one path");
  if (config.model.has_diffusion()) raise(Errc::sigma_unsupported, "exact path simulation needs sigma = 0");
  if (f.kind == FunctionalKind::dividends_killed) config.dividend_kill_theta = f.theta;
  config.record_events = false;

  double tail = 0.0;
  if (!config.horizon && config.q > 0.0) {
    const double level = config.x0 + (config.upper == UpperMode::none ? 0.0 : config.b);
    config.horizon = (40.0 + std::log1p(level)) / config.q;
  }
  if (config.horizon) {
    const LevyModel& m = config.model;
    const double flow = m.premium() + m.intensity() * m.mean_claim();
    const double q = config.q;
    const double decay = std::exp(-q * *config.horizon);
    tail = q > 0.0 ? decay * (1.0 + flow * (1.0 + std::abs(f.k)) / q) : kInf;
  }
  if (f.kind == FunctionalKind::time_in_red && config.upper == UpperMode::absorb &&
      config.lower == LowerMode::none && config.model.drift_mean() > 0.0)
    tail = std::max(tail, std::exp(-lundberg_exponent(config.model) * config.b));

  const PathConfig& cfg = config;
  auto values = parallel_paths(
      n_paths,
      [&](std::size_t i) {
        CounterRng rng(seed, i);
        const PathRecord rec = simulate_path(cfg, rng);
        return functional_value(f, rec, cfg);
      },
      threads);
  MCEstimate est = summarize(values);
  est.tail_bound = tail;
  est.horizon = config.horizon.value_or(0.0);
  return est;
}

}  // namespace pscale
