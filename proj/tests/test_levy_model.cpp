#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "catalog.hpp"
#include "pscale/error.hpp"
#include "pscale/levy_model.hpp"

using namespace pscale;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an exception");
  return Errc::domain_error;
}

bool contains_root(const std::vector<cplx>& roots, cplx z, double tol) {
  return std::any_of(roots.begin(), roots.end(), [&](cplx r) { return std::abs(r - z) < tol; });
}

}  // namespace

TEST_CASE("Laplace exponent examples") {
  const auto m1 = catalog::m1();
  const auto m2 = catalog::m2();
  CHECK(m1.laplace_exponent(0.0) == 0.0);
  CHECK(m1.laplace_exponent(1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(m2.laplace_exponent(3.0) == doctest::Approx(9.0).epsilon(1e-15));
  CHECK(catalog::m3().laplace_exponent(0.0) == 0.0);
}

TEST_CASE("drift of the catalog models") {
  CHECK(catalog::m1().drift_mean() == doctest::Approx(0.5));
  CHECK(catalog::m2().drift_mean() == 0.0);
  CHECK(LevyModel::cramer_lundberg(1.0, 3.0, 2.0).drift_mean() == doctest::Approx(-0.5));
}

TEST_CASE("complex arguments and poles") {
  const auto m1 = catalog::m1();
  const cplx z(0.3, 0.7);
  const cplx direct = m1.premium() * z - m1.intensity() * z / (2.0 + z);
  CHECK(std::abs(m1.laplace_exponent(z) - direct) < 1e-15);
  CHECK(code_of([&] { m1.laplace_exponent(-2.0); }) == Errc::pole_at_theta);
}

TEST_CASE("divided differences agree with their definitions") {
  for (const auto& m : {catalog::m1(), catalog::m3(), catalog::m4()}) {
    const double a = 0.7, b = 1.9, c = 0.2;
    const double d = m.divided_difference(a, b).real();
    CHECK(d == doctest::Approx((m.laplace_exponent(a) - m.laplace_exponent(b)) / (a - b)).epsilon(1e-12));
    CHECK(m.divided_difference(a, a).real() == doctest::Approx(m.laplace_exponent_derivative(a)).epsilon(1e-14));
    const double d2 = m.second_divided_difference(a, b, c).real();
    const double d2_ref = (m.divided_difference(a, c).real() - m.divided_difference(b, c).real()) / (a - b);
    CHECK(d2 == doctest::Approx(d2_ref).epsilon(1e-10));
    const double h = 1e-6;
    const double fd = (m.divided_difference(a + h, b).real() - m.divided_difference(a - h, b).real()) / (2 * h);
    CHECK(m.divided_difference_da(a, b).real() == doctest::Approx(fd).epsilon(1e-8));
  }
}

TEST_CASE("phi examples") {
  CHECK(phi(catalog::m1(), 2.0 / 3.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(phi(catalog::m2(), 4.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(phi(catalog::m1(), 0.0) == 0.0);
  // negative drift: Phi_0 > 0
  const auto neg = LevyModel::cramer_lundberg(1.0, 3.0, 2.0);
  const double p0 = phi(neg, 0.0);
  CHECK(p0 > 0.0);
  CHECK(std::abs(neg.laplace_exponent(p0)) < 1e-12);
}

TEST_CASE("phi inverts kappa and is monotone") {
  for (const auto& m : {catalog::m1(), catalog::m2(), catalog::m3(), catalog::m4()}) {
    double prev = -1.0;
    for (double s : {0.0, 0.01, 0.3, 1.0, 2.5, 10.0, 100.0}) {
      const double f = phi(m, s);
      CHECK(std::abs(m.laplace_exponent(f) - s) <= 1e-12 * std::max(1.0, s));
      CHECK(f >= prev);
      prev = f;
    }
    for (double theta : {0.1, 0.5, 1.0, 3.0, 7.0}) CHECK(phi(m, m.laplace_exponent(theta)) == doctest::Approx(theta).epsilon(1e-9));
  }
}

TEST_CASE("kappa is convex on the half line") {
  for (const auto& m : {catalog::m1(), catalog::m2(), catalog::m3(), catalog::m4()}) {
    const double h = 1e-3;
    for (double t = h; t < 10.0; t += 0.25) {
      const double d2 = m.laplace_exponent(t + h) - 2 * m.laplace_exponent(t) + m.laplace_exponent(t - h);
      CHECK(d2 >= -1e-9);
    }
  }
}

TEST_CASE("root sets") {
  auto r = root_set(catalog::m1(), 0.0);
  REQUIRE(r.size() == 2);
  CHECK(r[0] == cplx(0.0, 0.0));
  CHECK(contains_root(r, -1.0, 1e-12));

  r = root_set(catalog::m1(), 2.0 / 3.0);
  REQUIRE(r.size() == 2);
  CHECK(std::abs(r[0] - 1.0) < 1e-13);
  CHECK(contains_root(r, -4.0 / 3.0, 1e-12));

  r = root_set(catalog::m2(), 1.0);
  REQUIRE(r.size() == 2);
  CHECK(std::abs(r[0] - 1.0) < 1e-13);
  CHECK(contains_root(r, -1.0, 1e-12));

  for (const auto& m : {catalog::m3(), catalog::m4()}) {
    for (double s : {0.0, 0.5, 3.0}) {
      r = root_set(m, s);
      CHECK(r.size() == m.phases().size() + (m.has_diffusion() ? 2u : 1u));
      CHECK(r[0].real() == doctest::Approx(phi(m, s)).epsilon(1e-12));
      for (std::size_t j = 1; j < r.size(); ++j) {
        CHECK(r[j].real() < 0.0);
        CHECK(std::abs(m.laplace_exponent(r[j]) - s) < 1e-9);
        if (r[j].imag() != 0.0) CHECK(contains_root(r, std::conj(r[j]), 1e-14));
      }
    }
  }
}

TEST_CASE("model validation") {
  CHECK(code_of([] { LevyModel(1.0, -1.0, 0.0, {}); }) == Errc::invalid_model);
  CHECK(code_of([] { LevyModel(0.0, 0.0, 1.0, {{1.0, 1.0}}); }) == Errc::invalid_model);
  CHECK(code_of([] { LevyModel(1.0, 0.0, 1.0, {{0.5, 1.0}, {0.4, 2.0}}); }) == Errc::invalid_model);
  CHECK(code_of([] { LevyModel(1.0, 0.0, 1.0, {{0.5, 1.0}, {0.5, 1.0}}); }) == Errc::invalid_model);
  CHECK(code_of([] { LevyModel(1.0, 0.0, 1.0, {}); }) == Errc::invalid_model);
  CHECK(code_of([] { LevyModel(1.0, 0.0, 1.0, {{1.0, -2.0}}); }) == Errc::invalid_model);
}

TEST_CASE("coincident roots are rejected") {
  // zero drift: theta = 0 is a double root of kappa = 0
  const auto m = LevyModel::cramer_lundberg(1.0, 2.0, 2.0);
  CHECK(code_of([&] { root_set(m, 0.0); }) == Errc::degenerate_roots);
  CHECK(root_set(m, 0.5).size() == 2);
}
