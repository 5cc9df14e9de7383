#pragma once

#include <utility>
#include <vector>

#include "hslab/numerics.hpp"

namespace hslab {

// Solution of g'' + g/(4 sinh^2 t) = 0 with g(+inf) = 1, built from its
// hypergeometric closed form.  Two branches meet at t = ln(sqrt(2)); the
// inner branch carries the matched constants c1* = 1, c2* = -1/pi and a
// singular integral that is tabulated once (smooth part on Chebyshev nodes,
// logarithm split off in closed form).
class GProfile {
 public:
  GProfile();

  double value(double t) const;
  double derivative(double t) const;

  double c2_star() const { return c2_star_; }
  double asymptotic_b() const { return b_; }

  // I(x) = ∫_{-1}^x ds / (s(s-1)F(s)^2) for x in (-1, 0).
  double inner_integral(double x) const;
  // Smooth part of I: the integrand plus 1/s, integrated from -1.
  double smooth_inner_integral(double x) const;

  // sqrt(2t) (-ln(2t)/pi + B), the small-t form.
  double small_t_form(double t) const;

  static constexpr double kBranchPoint = 0.346573590279972654;  // ln(sqrt(2))

 private:
  ChebyshevSeries phi_;  // antiderivative of the smooth integrand
  double c2_star_ = 0.0;
  double b_ = 0.0;
};

// Solution of h'' - (n-1)(n-3) h/(4 sinh^2 t) = 0 with h(+inf) = 1.  For
// n = 3 this is identically 1; for n >= 4 the inner branch uses the matched
// constants c1#, c2# and a strongly singular integral whose polynomial part
// is integrated in closed form via the Taylor coefficients of
// 1/((s-1)F1(s)^2).
class HProfile {
 public:
  explicit HProfile(int n);

  int dim() const { return n_; }
  bool trivial() const { return n_ == 3; }

  double value(double t) const;
  double derivative(double t) const;

  double c1_sharp() const { return c1_; }
  double c2_sharp() const { return c2_; }

  // I1(x) = ∫_{-1}^x ds / (s^{n-1}(s-1)F1(s)^2) for x in (-1, 0); n >= 4.
  double inner_integral(double x) const;

  // Leading small-t form including the displayed correction term.
  double asymptotic_lead(double t) const;

  // Taylor coefficients of 1/((s-1)F1(s)^2) at s = 0.
  const std::vector<double>& p_series() const { return p_; }

 private:
  double singular_remainder_over_power(double s) const;

  int n_ = 3;
  double c1_ = 1.0;
  double c2_ = 0.0;
  std::vector<double> p_;
  ChebyshevSeries psi_;  // antiderivative of the smooth remainder
};

// Shared, lazily built instances (construction is the only mutating phase).
const GProfile& g_profile();
const HProfile& h_profile(int n);

double g_eval(double t);
double h_eval(int n, double t);

// (c1#, c2#) for n >= 4; throws MatchFailure if the two branches of h fail
// to match at the branch point with these constants.
std::pair<double, double> matching_constants(int n);

// B = 1 + (1/pi) ∫_0^1 (1 - (1+t)F(-t)^2) / (t(t+1)F(-t)^2) dt, evaluated by
// direct quadrature (independent of the tabulated route inside GProfile).
double asymptotic_b();

// |h(t)/lead(t) - 1| for 0 < t < 0.1, n >= 4.
double h_asymptotic_check(int n, double t);

struct RadialFactors {
  double f;    // (sinh t)^{-(n-1)/2} g(t)
  double phi;  // (sinh t)^{-(n-1)/2} h(t)
};
RadialFactors radial_factors(int n, double t);

}  // namespace hslab
