#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hslab/numerics.hpp"

using namespace hslab;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("constant integrand") {
  auto one = [](double) { return 1.0; };
  CHECK(integrate(one, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("inverse square root with power_left transform") {
  QuadratureSpec spec;
  spec.endpoint_transform = EndpointTransform::power_left;
  spec.power_left_exponent = -0.5;
  auto f = [](double x) { return 1.0 / std::sqrt(x); };
  CHECK(integrate(f, 0.0, 1.0, spec) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("partial fractions against the analytic antiderivative") {
  // ∫_t^1 ds/(s(s+1)) = ln((1+t)/(2t)); at t = 0.25 this is ln(2.5).
  auto f = [](double s) { return 1.0 / (s * (s + 1.0)); };
  const double expected = std::log(2.5);  // 0.9162907318741551
  CHECK(integrate(f, 0.25, 1.0) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(0.9162907318741551).epsilon(1e-15));
}

TEST_CASE("log_left transform handles a logarithmic singularity") {
  // ∫_0^b ln(x) dx = b ln b - b.
  QuadratureSpec spec;
  spec.endpoint_transform = EndpointTransform::log_left;
  auto f = [](double x) { return std::log(x); };
  const double b = 0.5;
  CHECK(integrate(f, 0.0, b, spec) ==
        doctest::Approx(b * std::log(b) - b).epsilon(1e-12));
}

TEST_CASE("exp_right transform on exponentially decaying tails") {
  QuadratureSpec spec;
  spec.endpoint_transform = EndpointTransform::exp_right;
  auto f = [](double x) { return std::exp(-x); };
  CHECK(integrate(f, 0.0, kInf, spec) == doctest::Approx(1.0).epsilon(1e-12));

  // Γ(5) = 24 with a slower decay scale.
  spec.exp_right_scale = 2.0;
  auto g = [](double x) { return x * x * x * x * std::exp(-x); };
  CHECK(integrate(g, 0.0, kInf, spec) == doctest::Approx(24.0).epsilon(1e-11));
}

TEST_CASE("integrate rejects bad input") {
  auto one = [](double) { return 1.0; };
  CHECK_THROWS_AS(integrate(one, 1.0, 0.5), DomainError);
  CHECK_THROWS_AS(integrate(one, 0.0, kInf), DomainError);
  QuadratureSpec bad;
  bad.abs_tol = 0.0;
  CHECK_THROWS_AS(integrate(one, 0.0, 1.0, bad), DomainError);
}

TEST_CASE("linearity over random polynomial pairs") {
  std::mt19937_64 rng(20240817);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    double c1[4], c2[4];
    for (int i = 0; i < 4; ++i) {
      c1[i] = coeff(rng);
      c2[i] = coeff(rng);
    }
    auto p1 = [&](double x) { return c1[0] + x * (c1[1] + x * (c1[2] + x * c1[3])); };
    auto p2 = [&](double x) { return c2[0] + x * (c2[1] + x * (c2[2] + x * c2[3])); };
    const double alpha = coeff(rng), beta = coeff(rng);
    auto combo = [&](double x) { return alpha * p1(x) + beta * p2(x); };
    const double lhs = integrate(combo, -1.0, 2.0);
    const double rhs = alpha * integrate(p1, -1.0, 2.0) + beta * integrate(p2, -1.0, 2.0);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
  }
}

TEST_CASE("splitting invariance at random interior points") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> mid(0.05, 0.95);
  auto f = [](double x) { return std::exp(-x) * std::cos(3.0 * x); };
  const double whole = integrate(f, 0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double c = mid(rng);
    const double split = integrate(f, 0.0, c) + integrate(f, c, 1.0);
    CHECK(whole == doctest::Approx(split).epsilon(1e-11));
  }
}

TEST_CASE("find_root basics") {
  auto linear = [](double x) { return x - 1.0; };
  CHECK(find_root(linear, RootBracket{0.0, 2.0, -1, 1}, 1e-12) ==
        doctest::Approx(1.0).epsilon(1e-12));

  auto quad = [](double x) { return x * x - 2.0; };
  CHECK(find_root(quad, RootBracket{1.0, 2.0, -1, 1}, 1e-12) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("find_root through a quadrature-defined map") {
  // With a trivial unit profile the map rho -> ∫_0^rho dr is the identity,
  // so matching the level 0.7 must return 0.7.
  auto f = [](double rho) {
    auto one = [](double) { return 1.0; };
    return integrate(one, 0.0, rho) - 0.7;
  };
  CHECK(find_root(f, RootBracket{1e-6, 2.0, -1, 1}, 1e-10) ==
        doctest::Approx(0.7).epsilon(1e-9));
}

TEST_CASE("find_root rejects sign-compatible endpoints") {
  auto f = [](double x) { return x * x + 1.0; };
  CHECK_THROWS_AS(find_root(f, RootBracket{0.0, 1.0, 1, 1}, 1e-8), BadBracket);
}

TEST_CASE("find_root residual bounded by slope times tolerance") {
  auto f = [](double x) { return std::sin(x) - 0.3; };
  const double tol = 1e-10;
  const double x = find_root(f, RootBracket{0.0, 1.5, -1, 1}, tol);
  const double slope_sup = 1.0;  // |cos| <= 1 on the bracket
  CHECK(std::abs(f(x)) <= 10.0 * slope_sup * tol);
}

TEST_CASE("ode: straight line") {
  OdeProblem prob;
  prob.rhs = [](double, const OdeState& y) { return OdeState{y[1], 0.0}; };
  prob.t_start = 0.0;
  prob.t_end = 1.0;
  prob.initial_state = {0.0, 1.0};
  auto sol = integrate_ode(prob);
  auto y = sol(1.0);
  CHECK(y[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(y[1] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("ode: exponential growth") {
  OdeProblem prob;
  prob.rhs = [](double, const OdeState& y) { return OdeState{y[1], y[0]}; };
  prob.t_start = 0.0;
  prob.t_end = 1.0;
  prob.initial_state = {1.0, 1.0};
  prob.tol = 1e-12;
  auto sol = integrate_ode(prob);
  CHECK(sol(1.0)[0] == doctest::Approx(std::exp(1.0)).epsilon(1e-10));
  // Dense output in the interior as well.
  CHECK(sol(0.5)[0] == doctest::Approx(std::exp(0.5)).epsilon(1e-8));
}

TEST_CASE("ode: backward integration") {
  OdeProblem prob;
  prob.rhs = [](double, const OdeState& y) { return OdeState{y[1], y[0]}; };
  prob.t_start = 1.0;
  prob.t_end = 0.0;
  prob.initial_state = {std::exp(1.0), std::exp(1.0)};
  prob.tol = 1e-12;
  auto sol = integrate_ode(prob);
  CHECK(sol(0.0)[0] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("chebyshev fit, eval, antiderivative") {
  auto cubic = [](double x) { return x * x * x; };
  auto fit = ChebyshevSeries::fit(cubic, -1.0, 2.0, 16);
  CHECK(fit(1.3) == doctest::Approx(1.3 * 1.3 * 1.3).epsilon(1e-13));

  auto anti = fit.antiderivative();
  // ∫_{-1}^x t^3 dt = (x^4 - 1)/4.
  CHECK(anti(-1.0) == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(anti(2.0) == doctest::Approx((16.0 - 1.0) / 4.0).epsilon(1e-12));

  auto smooth = [](double x) { return std::exp(x) * std::sin(2.0 * x); };
  auto sfit = ChebyshevSeries::fit(smooth, 0.0, 1.0, 40);
  CHECK(sfit(0.371) == doctest::Approx(smooth(0.371)).epsilon(1e-13));
  CHECK(sfit.tail_magnitude() < 1e-14);
}
