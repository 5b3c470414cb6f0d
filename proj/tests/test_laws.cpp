#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "decompound/errors.hpp"
#include "decompound/law.hpp"
#include "decompound/rng.hpp"
#include "test_support.hpp"

using namespace decompound;

TEST_CASE("point mass and zero law sample degenerately") {
  RngStream rng(1);
  const auto pm = Law::point_mass(2.0).sample(3, rng);
  CHECK(pm == std::vector<double>{2.0, 2.0, 2.0});
  const auto zero = Law::degenerate0().sample(5, rng);
  for (double v : zero) CHECK(v == 0.0);
}

TEST_CASE("gaussian sample mean obeys the CLT envelope") {
  RngStream rng(42);
  const auto draws = Law::gaussian(0.0, 1.0).sample(1000000, rng);
  CHECK(std::abs(testsupport::mean(draws)) < 4.0 / std::sqrt(1e6));
}

TEST_CASE("sampling is reproducible for a fixed seed") {
  const Law law = Law::gaussian_mixture({0.3, 0.7}, {-3.5, 3.5}, {1.0, 1.0});
  RngStream a(7), b(7);
  CHECK(law.sample(100, a) == law.sample(100, b));
}

TEST_CASE("substreams are independent of draw order") {
  RngStream root(3);
  RngStream s5 = root.substream(5);
  const double first = s5.uniform01();
  root.uniform01(); // advancing the parent must not disturb the child
  RngStream s5_again = RngStream(3).substream(5);
  CHECK(s5_again.uniform01() == first);
}

TEST_CASE("analytic cf closed forms") {
  const Law pm = Law::point_mass(1.7);
  for (double u : {-2.0, 0.0, 0.9, 4.2}) {
    const auto v = pm.analytic_cf(u);
    CHECK(v.real() == doctest::Approx(std::cos(u * 1.7)).epsilon(1e-15));
    CHECK(v.imag() == doctest::Approx(std::sin(u * 1.7)).epsilon(1e-15));
  }
  CHECK(Law::gaussian(0, 1).analytic_cf(0.0) == std::complex<double>(1.0, 0.0));
  CHECK(Law::degenerate0().analytic_cf(3.0) == std::complex<double>(1.0, 0.0));
}

TEST_CASE("cauchy cf matches direct quadrature of its density") {
  const Law law = Law::cauchy(0.0, 1.0);
  for (double u : {0.7, 1.3}) {
    // oracle: int cos(ux) / (pi (1+x^2)) dx, wide range + analytic tail bound
    const auto oracle = testsupport::integrate(
        [&](double x) { return std::cos(u * x) * law.analytic_density(x); }, -400.0, 400.0,
        4000000);
    CHECK(law.analytic_cf(u).real() == doctest::Approx(oracle).epsilon(1e-4));
    CHECK(law.analytic_cf(u).imag() == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("cf modulus is bounded by 1 with equality at zero") {
  const std::vector<Law> laws = {
      Law::gaussian_mixture({0.3, 0.7}, {-3.5, 3.5}, {1.0, 1.0}),
      Law::gamma(2.0, 1.0),
      Law::cauchy(0.0, 1.0),
      Law::gaussian(0.5, 2.0),
      Law::point_mass(-1.2),
      Law::degenerate0(),
  };
  for (const Law& law : laws) {
    CHECK(std::abs(law.analytic_cf(0.0) - std::complex<double>(1, 0)) < 1e-14);
    for (double u = -6.0; u <= 6.0; u += 0.37)
      CHECK(std::abs(law.analytic_cf(u)) <= 1.0 + 1e-12);
  }
}

TEST_CASE("cf is hermitian") {
  const std::vector<Law> laws = {
      Law::gaussian_mixture({0.3, 0.7}, {-2.0, 2.0}, {1.0, 1.0}),
      Law::gamma(2.0, 0.5),
      Law::cauchy(0.3, 1.0),
      Law::point_mass(2.0),
  };
  for (const Law& law : laws) {
    for (double u : {0.4, 1.1, 3.3}) {
      const auto a = law.analytic_cf(-u);
      const auto b = std::conj(law.analytic_cf(u));
      CHECK(a.real() == b.real());
      CHECK(a.imag() == b.imag());
    }
  }
}

TEST_CASE("mellin transform closed forms") {
  CHECK(Law::point_mass(5.0).analytic_mellin(1.0, 0.0) == std::complex<double>(1.0, 0.0));
  const auto pm2 = Law::point_mass(2.0).analytic_mellin(1.0, 3.1);
  CHECK(pm2.real() == doctest::Approx(std::cos(3.1 * std::log(2.0))).epsilon(1e-14));
  CHECK(pm2.imag() == doctest::Approx(std::sin(3.1 * std::log(2.0))).epsilon(1e-14));

  const auto beta1 = Law::beta(200.0, 30.0).analytic_mellin(1.0, 0.0);
  CHECK(beta1.real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(beta1.imag() == doctest::Approx(0.0).epsilon(1e-12));

  // oracle: direct quadrature of x^{it} against the beta density
  const Law beta = Law::beta(200.0, 30.0);
  for (double t : {5.0, 20.0}) {
    const auto oracle = testsupport::integrate_complex(
        [&](double x) {
          const double lx = std::log(x);
          return std::complex<double>(std::cos(t * lx), std::sin(t * lx)) *
                 beta.analytic_density(x);
        },
        1e-6, 1.0 - 1e-6, 400000);
    const auto got = beta.analytic_mellin(1.0, t);
    CHECK(std::abs(got - oracle) < 1e-6);
  }
}

TEST_CASE("point mass mellin modulus is x0^(c-1)") {
  const Law pm = Law::point_mass(2.0);
  for (double c : {0.5, 1.0, 2.0})
    for (double t : {0.0, 1.0, 7.7})
      CHECK(std::abs(pm.analytic_mellin(c, t)) ==
            doctest::Approx(std::pow(2.0, c - 1.0)).epsilon(1e-14));
}

TEST_CASE("analytic densities") {
  CHECK(Law::gaussian(0, 1).analytic_density(0.0) ==
        doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)).epsilon(1e-15));
  const Law mix = Law::gaussian_mixture({0.3, 0.7}, {-3.5, 3.5}, {1.0, 1.0});
  const double phi35 = std::exp(-0.5 * 3.5 * 3.5) / std::sqrt(2.0 * M_PI);
  CHECK(mix.analytic_density(0.0) == doctest::Approx(phi35).epsilon(1e-12));
  CHECK(Law::gamma(2, 1).analytic_density(1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("densities integrate to one") {
  CHECK(testsupport::integrate([](double x) { return Law::gamma(2, 1).analytic_density(x); },
                               0.0, 60.0, 200000) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(testsupport::integrate(
            [](double x) { return Law::beta(200, 30).analytic_density(x); }, 1e-9,
            1.0 - 1e-9, 200000) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("unsupported transforms are rejected") {
  CHECK_THROWS_AS(Law::beta(200, 30).analytic_cf(1.0), UnsupportedError);
  CHECK_THROWS_AS(Law::gaussian(0, 1).analytic_mellin(1.0, 0.0), UnsupportedError);
  CHECK_THROWS_AS(Law::point_mass(-1.0).analytic_mellin(1.0, 0.0), UnsupportedError);
  CHECK_THROWS_AS(Law::point_mass(2.0).analytic_density(0.5), UnsupportedError);
  CHECK_THROWS_AS(Law::degenerate0().analytic_density(0.0), UnsupportedError);
}

TEST_CASE("invalid parameters are rejected at construction") {
  CHECK_THROWS_AS(Law::gaussian(0.0, 0.0), NumericError);
  CHECK_THROWS_AS(Law::gamma(-1.0, 1.0), NumericError);
  CHECK_THROWS_AS(Law::cauchy(0.0, -2.0), NumericError);
  CHECK_THROWS_AS(Law::beta(0.0, 1.0), NumericError);
  CHECK_THROWS_AS(Law::gaussian_mixture({0.5, 0.4}, {0, 1}, {1, 1}), NumericError);
  CHECK_THROWS_AS(Law::gaussian_mixture({0.5, 0.5}, {0, 1}, {1, -1}), NumericError);
}

TEST_CASE("law literals round-trip through the parser") {
  const std::vector<std::string> literals = {
      "mixture(0.3:N(-3.5,1), 0.7:N(3.5,1))", "gamma(2,1)", "cauchy(0,1)",
      "beta(200,30)",  "N(0,1)", "none", "pointmass(2)",
  };
  for (const auto& text : literals) {
    const Law law = parse_law(text);
    CHECK(parse_law(law.to_string()) == law);
  }
  CHECK_THROWS_AS(parse_law("triangle(1,2)"), ConfigError);
  CHECK_THROWS_AS(parse_law("gamma(2,1) extra"), ConfigError);
  CHECK_THROWS_AS(parse_law("mixture(0.2:N(0,1), 0.7:N(1,1))"), ConfigError);
}
