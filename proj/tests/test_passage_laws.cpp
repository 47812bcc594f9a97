#include <doctest.h>

#include <cmath>
#include <random>

#include "catalog.hpp"
#include "pscale/error.hpp"
#include "pscale/passage_laws.hpp"

using namespace pscale;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::invalid_model;
}

const double e1 = std::exp(-1.0);
const double e2 = std::exp(-2.0);

}  // namespace

TEST_CASE("two-sided exit") {
  const ScaleContext m1(catalog::m1(), 0.0);
  const ScaleContext m2(catalog::m2(), 1.0);
  CHECK(two_sided_exit(m1, 1.0, 0.0, 2.0) == doctest::Approx((2 - e1) / (2 - e2)).epsilon(1e-12));
  CHECK(two_sided_exit(m1, 1.0, 0.0, 2.0) == doctest::Approx(0.875290).epsilon(1e-6));
  CHECK(two_sided_exit(m1, 2.0, 0.0, 2.0) == 1.0);
  for (double x : {0.1, 0.7, 1.9}) CHECK(two_sided_exit(m2, x, 0.0, 2.0) == doctest::Approx(std::sinh(x) / std::sinh(2.0)).epsilon(1e-11));
  CHECK(two_sided_exit(m1, 1.5, 0.5, 2.5) == doctest::Approx((2 - e1) / (2 - e2)).epsilon(1e-12));
  CHECK(code_of([&] { two_sided_exit(m1, 3.0, 0.0, 2.0); }) == Errc::domain_error);
  CHECK(code_of([&] { two_sided_exit(m1, 1.0, 2.0, 2.0); }) == Errc::domain_error);
}

TEST_CASE("severity of ruin, absorbed and reflected") {
  const ScaleContext m1(catalog::m1(), 0.0);
  // Z_0(x,1) = 4/3 - e^{-x}/3 and W_0 = 2 - e^{-x}
  const double expected = (4.0 / 3 - e1 / 3) - (2 - e1) / (2 - e2) * (4.0 / 3 - e2 / 3);
  CHECK(severity_absorbed(m1, 1.0, 2.0, 1.0) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(severity_absorbed(m1, 1.0, 2.0, 1.0) == doctest::Approx(0.0831407).epsilon(1e-6));
  CHECK(std::abs(severity_absorbed(m1, 2.0, 2.0, 1.0)) < 1e-15);
  const ScaleContext m2(catalog::m2(), 1.0);
  CHECK(severity_absorbed(m2, 0.0, 2.0, 0.5) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(severity_reflected(m2, 0.0, 2.0, 0.5) == doctest::Approx(1.0).epsilon(1e-10));
  for (double x : {0.0, 0.5, 1.7}) CHECK(severity_reflected(m1, x, 2.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));

  const ScaleContext m1q(catalog::m1(), 2.0 / 3.0);
  const double E = std::exp(1.0), F = std::exp(-4.0 / 3.0);
  const double w1 = 9 * E / 7 - 2 * F / 7, dw1 = 9 * E / 7 + 8 * F / 21;
  CHECK(severity_reflected(m1q, 0.0, 1.0, 0.0) == doctest::Approx(1 - (2.0 / 3) * w1 / dw1).epsilon(1e-12));
}

TEST_CASE("ruin and recovery transforms") {
  const ScaleContext m1q(catalog::m1(), 2.0 / 3.0);
  for (double x : {0.0, 0.3, 1.0, 2.5})
    CHECK(severity_infinite(m1q, x, 0.0, InfiniteHorizonMode::ruin) == doctest::Approx(std::exp(-4 * x / 3) / 3).epsilon(1e-11));
  const ScaleContext m2(catalog::m2(), 1.0);
  CHECK(severity_infinite(m2, 0.0, 0.0, InfiniteHorizonMode::ruin) == doctest::Approx(1.0).epsilon(1e-10));
  const double Phi = m1q.phi_q();
  CHECK(severity_infinite(m1q, 0.0, Phi, InfiniteHorizonMode::ruin) ==
        doctest::Approx(1 - m1q.W(0.0) * catalog::m1().laplace_exponent_derivative(Phi)).epsilon(1e-12));
  // recovery is the ruin transform with theta -> Phi_q
  for (const auto& m : {catalog::m1(), catalog::m3(), catalog::m4()}) {
    const ScaleContext c(m, 0.5);
    for (double x : {0.0, 0.4, 2.0}) {
      const double rec = severity_infinite(c, x, 0.0, InfiniteHorizonMode::recovery);
      const double lo = severity_infinite(c, x, c.phi_q() - 1e-6, InfiniteHorizonMode::ruin);
      const double hi = severity_infinite(c, x, c.phi_q() + 1e-6, InfiniteHorizonMode::ruin);
      CHECK(rec == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-8));
      CHECK(rec >= 0.0);
      CHECK(rec <= 1.0 + 1e-12);
    }
  }
  CHECK(code_of([] { severity_infinite(ScaleContext(catalog::m1(), 0.0), 1.0, 0.0, InfiniteHorizonMode::ruin); }) ==
        Errc::q_zero);
}

TEST_CASE("bailouts to level") {
  const ScaleContext m1(catalog::m1(), 0.0);
  CHECK(bailouts_to_level(m1, 0.0, 1.0, 1.0) == doctest::Approx(1.0 / (4.0 / 3 - e1 / 3)).epsilon(1e-12));
  CHECK(bailouts_to_level(m1, 0.0, 1.0, 1.0) == doctest::Approx(0.825964).epsilon(1e-6));
  CHECK(bailouts_to_level(m1, 1.0, 1.0, 1.0) == 1.0);
  for (double x : {0.0, 0.6}) CHECK(bailouts_to_level(m1, x, 1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(bailouts_to_level(m1, 0.5, 1.0, kInfiniteTheta) == doctest::Approx(m1.W(0.5) / m1.W(1.0)).epsilon(1e-14));
}

TEST_CASE("dividends-penalty law") {
  for (const auto& m : {catalog::m1(), catalog::m2(), catalog::m3()}) {
    const ScaleContext c(m, 0.4);
    for (double x : {0.0, 0.7, 1.5})
      for (double theta : {0.0, 1.0}) {
        CHECK(dividends_penalty_classic(c, x, 1.5, theta, 0.0) == doctest::Approx(severity_reflected(c, x, 1.5, theta)).epsilon(1e-13));
        CHECK(std::abs(dividends_penalty_classic(c, x, 1.5, theta, 1e12) - severity_absorbed(c, x, 1.5, theta)) < 1e-6);
        CHECK(dividends_penalty_classic(c, x, 1.5, theta, kInfiniteTheta) == doctest::Approx(severity_absorbed(c, x, 1.5, theta)));
      }
  }
  const ScaleContext m2(catalog::m2(), 1.0);
  CHECK(dividends_penalty_classic(m2, 0.0, 1.0, 0.3, 2.0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(code_of([&] { dividends_penalty_classic(m2, 0.5, 1.0, 0.3, -1.0); }) == Errc::domain_error);
}

TEST_CASE("Gerber-Shiu exit functionals") {
  const ScaleContext c(catalog::m3(), 0.5);
  for (double x : {0.0, 0.8, 2.0}) {
    CHECK(gs_exit(c, x, 2.0, ExponentialPenalty{0.7}, Boundary::absorbed) == doctest::Approx(severity_absorbed(c, x, 2.0, 0.7)).epsilon(1e-13));
    CHECK(gs_exit(c, x, 2.0, ExponentialPenalty{0.7}, Boundary::reflected) == doctest::Approx(severity_reflected(c, x, 2.0, 0.7)).epsilon(1e-13));
    CHECK(gs_exit(c, x, 2.0, ConstantPenalty{1.0}, Boundary::absorbed) ==
          doctest::Approx(c.plain(x, ZKind::Z) - c.W(x) * c.plain(2.0, ZKind::Z) / c.W(2.0)).epsilon(1e-13));
  }
  CHECK(std::abs(gs_exit(c, 2.0, 2.0, LinearPenalty{1.0, 0.0}, Boundary::absorbed)) < 1e-13);
  CHECK(code_of([&] { gs_exit(c, 1.0, 2.0, CustomPenalty{[](double) { return 1.0; }}, Boundary::absorbed); }) ==
        Errc::unsupported_penalty);
}

TEST_CASE("time in the red") {
  const ScaleContext m1(catalog::m1(), 0.0);
  for (double x : {0.0, 0.3, 1.0, 5.0}) CHECK(time_in_red(m1, x, 2.0 / 3) == doctest::Approx(1 - 0.25 * std::exp(-x)).epsilon(1e-12));
  CHECK(time_in_red(m1, 0.0, 2.0 / 3) == doctest::Approx(0.75).epsilon(1e-13));
  CHECK(std::abs(time_in_red(m1, 40.0, 2.0 / 3) - 1.0) < 1e-10);
  const ScaleContext neg(LevyModel::cramer_lundberg(1.0, 3.0, 2.0), 0.0);
  CHECK(code_of([&] { time_in_red(neg, 1.0, 1.0); }) == Errc::nonpositive_drift);
  CHECK(code_of([] { time_in_red(ScaleContext(catalog::m1(), 0.1), 1.0, 1.0); }) == Errc::domain_error);
}

TEST_CASE("fundamental law") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const auto m = i % 2 ? catalog::m1() : catalog::m2();
    const double q = (i % 2 ? 0.0 : 0.05) + 2.0 * U(gen);
    const double theta = 3.0 * U(gen);
    const double b = 0.1 + 3.0 * U(gen);
    const double x = b * U(gen);
    const ScaleContext c(m, q);
    const double lhs = c.Z(x, theta) / c.Z(b, theta) - c.W(x) / c.W(b) - severity_absorbed(c, x, b, theta) / c.Z(b, theta);
    CHECK(std::abs(lhs) < 1e-10);
  }
}

TEST_CASE("exit probabilities are monotone in the starting point") {
  for (const auto& m : {catalog::m1(), catalog::m3(), catalog::m4()}) {
    const ScaleContext c(m, 0.3);
    const ParisianContext p(m, 0.3, 0.8);
    double prev_c = -1, prev_p = -1, prev_t = -1;
    for (int i = 0; i <= 100; ++i) {
      const double x = 2.0 * i / 100;
      const double vc = two_sided_exit(c, x, 0.0, 2.0);
      const double vp = parisian_up_exit(p, x, 2.0, kInfiniteTheta);
      const double vt = parisian_up_exit(p, x, 2.0, 0.6);
      CHECK(vc >= prev_c - 1e-14);
      CHECK(vp >= prev_p - 1e-14);
      CHECK(vt >= prev_t - 1e-14);
      prev_c = vc, prev_p = vp, prev_t = vt;
    }
  }
}

TEST_CASE("transforms lie in [0, 1]") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const LevyModel models[] = {catalog::m1(), catalog::m2(), catalog::m3(), catalog::m4()};
  for (int i = 0; i < 200; ++i) {
    const auto& m = models[i % 4];
    const double q = 2.0 * U(gen) + (m.drift_mean() == 0.0 ? 0.01 : 0.0);
    const double r = 0.05 + 5.0 * U(gen);
    const double theta = 3.0 * U(gen), vartheta = 3.0 * U(gen);
    const double b = 0.1 + 3.0 * U(gen);
    const double x = b * U(gen);
    const ScaleContext c(m, q);
    const ParisianContext p(c, r);
    const double vals[] = {
        two_sided_exit(c, x, 0.0, b),
        severity_absorbed(c, x, b, theta),
        severity_reflected(c, x, b, theta),
        bailouts_to_level(c, x, b, theta),
        dividends_penalty_classic(c, x, b, theta, vartheta),
        parisian_up_exit(p, x, b, theta),
        parisian_up_exit(p, x, b, kInfiniteTheta),
        parisian_severity(p, x, b, theta),
        parisian_dividends_penalty(p, x, b, theta, vartheta),
    };
    for (double v : vals) {
      CHECK(v >= -1e-12);
      CHECK(v <= 1.0 + 1e-12);
    }
    if (q > 0.0) {
      const double ruin = severity_infinite(c, x, theta, InfiniteHorizonMode::ruin);
      CHECK(ruin >= -1e-12);
      CHECK(ruin <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("Parisian up-exit examples") {
  const ParisianContext p(catalog::m2(), 1.0, 3.0);
  for (double b : {0.5, 1.0, 2.0}) CHECK(parisian_up_exit(p, 0.0, b, kInfiniteTheta) == doctest::Approx(2.0 / (3 * std::exp(b) - std::exp(-b))).epsilon(1e-12));
  CHECK(parisian_up_exit(p, 1.0, 1.0, 0.5) == 1.0);
  const ParisianContext p1(catalog::m1(), 2.0 / 3, 1.0 / 3);
  const double F = phi(catalog::m1(), 1.0);
  CHECK(parisian_up_exit(p1, 1.0, 2.0, kInfiniteTheta) == doctest::Approx(p1.base().Z(1.0, F) / p1.base().Z(2.0, F)).epsilon(1e-13));
  CHECK(std::abs(parisian_severity(p1, 2.0, 2.0, 1.0)) < 1e-14);
}

TEST_CASE("resolvent densities") {
  for (const auto& m : {catalog::m1(), catalog::m4()}) {
    const ParisianContext p(m, 0.5, 0.8);
    for (double x : {0.2, 1.0, 1.8}) {
      for (int i = 1; i < 50; ++i) {
        const double y = 2.0 * i / 50;
        CHECK(parisian_resolvent(p, x, 0.0, 2.0, y) >= -1e-12);
        CHECK(classical_resolvent(p.base(), x, 0.0, 2.0, y) >= -1e-12);
      }
      const double mass = parisian_resolvent_mass(p, x, 0.0, 2.0);
      const double quad = catalog::integrate([&](double y) { return parisian_resolvent(p, x, 0.0, 2.0, y); }, 1e-12, x) +
                          catalog::integrate([&](double y) { return parisian_resolvent(p, x, 0.0, 2.0, y); }, x, 2.0 - 1e-12);
      CHECK(mass == doctest::Approx(quad).epsilon(1e-8));
      // time below zero is killed at rate r, so it accounts for severity/r
      const double sev = parisian_severity(p, x, 2.0, 0.0);
      const double occupation = (1.0 - parisian_up_exit(p, x, 2.0, kInfiniteTheta) - sev) / p.q();
      CHECK(mass + sev / p.r() == doctest::Approx(occupation).epsilon(1e-8));
    }
    // above the start point only the first term contributes
    CHECK(parisian_resolvent(p, 0.5, 0.0, 2.0, 1.5) ==
          doctest::Approx(p.W(0.5) * p.base().W(0.5) / p.W(2.0)).epsilon(1e-13));
  }
}

TEST_CASE("Parisian dividends-penalty law") {
  for (const auto& m : {catalog::m1(), catalog::m2(), catalog::m3(), catalog::m4()}) {
    const ParisianContext p(m, 0.4, 1.3);
    const double b = 1.6;
    for (double theta : {0.0, 0.6, 2.0})
      for (double vartheta : {0.0, 0.5, 3.0}) {
        for (double x : {0.0, 0.5, 1.2, b}) {
          const double direct = parisian_dividends_penalty(p, x, b, theta, vartheta);
          CHECK(direct == doctest::Approx(parisian_dividends_penalty_h_form(p, x, b, theta, vartheta)).epsilon(1e-9));
        }
        CHECK(parisian_dividends_penalty(p, b, b, theta, vartheta) ==
              doctest::Approx(parisian_dividends_penalty_at_barrier(p, b, theta, vartheta)).epsilon(1e-10));
      }
    const double om = omega(p, b);
    CHECK(om == doctest::Approx(p.W(b, 1) / p.W(b)).epsilon(1e-10));
    CHECK(om == doctest::Approx(p.phi_qr() - p.r() * p.base().W(b) / p.base().Z(b, p.phi_qr())).epsilon(1e-10));
    CHECK(parisian_dividends_penalty(p, 0.7, b, 0.5, kInfiniteTheta) == doctest::Approx(parisian_severity(p, 0.7, b, 0.5)));
  }
  const ParisianContext p2(catalog::m2(), 0.4, 1.3);
  // W_{q,r}(0) = 1, so even with diffusion ruin is not immediate from 0
  CHECK(p2.W(0.0) == doctest::Approx(1.0).epsilon(1e-13));
  const double v0 = parisian_dividends_penalty(p2, 0.0, 1.0, 0.0, 0.0);
  CHECK(v0 == doctest::Approx(1.0 - p2.Z(1.0, 0.0, 1) / p2.W(1.0, 1)).epsilon(1e-12));
  CHECK(v0 < 1.0);
}

TEST_CASE("Parisian laws approach the classical ones as r grows") {
  const auto m = catalog::m1();
  const double q = 0.5, b = 2.0;
  const ParisianContext p(m, q, 1e4);
  const ScaleContext& c = p.base();
  for (double x : {0.0, 0.5, 1.0, 1.5}) {
    for (double theta : {0.0, 1.0}) {
      CHECK(std::abs(parisian_up_exit(p, x, b, theta) - bailouts_to_level(c, x, b, theta)) < 1e-2);
      CHECK(std::abs(parisian_severity(p, x, b, theta) - severity_absorbed(c, x, b, theta)) < 1e-2);
      CHECK(std::abs(parisian_dividends_penalty(p, x, b, theta, 0.7) - dividends_penalty_classic(c, x, b, theta, 0.7)) < 1e-2);
    }
    CHECK(std::abs(parisian_up_exit(p, x, b, kInfiniteTheta) - two_sided_exit(c, x, 0.0, b)) < 1e-2);
    CHECK(std::abs(parisian_resolvent(p, x, 0.0, b, 1.2) - classical_resolvent(c, x, 0.0, b, 1.2)) < 1e-2);
  }
}

TEST_CASE("name-based evaluation") {
  const ScaleContext c(catalog::m1(), 0.0);
  const ParisianContext p(catalog::m1(), 2.0 / 3, 1.0 / 3);
  LawQuery q;
  q.name = "two_sided";
  q.x = 1.0;
  q.b = 2.0;
  const auto res = evaluate_law(c, nullptr, q);
  CHECK(res.value == doctest::Approx((2 - e1) / (2 - e2)));
  CHECK(res.components.count("W(b-a)") == 1);
  q.name = "parisian_up_exit";
  CHECK(code_of([&] { evaluate_law(c, nullptr, q); }) == Errc::domain_error);
  q.name = "no_such_law";
  try {
    evaluate_law(c, &p, q);
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("time_in_red") != std::string::npos);
  }
  CHECK(law_names().size() == 16);
  CHECK(law_needs_parisian("parisian_severity"));
  CHECK_FALSE(law_needs_parisian("severity_absorbed"));
}
