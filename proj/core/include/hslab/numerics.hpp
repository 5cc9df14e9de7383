#pragma once

#include <array>
#include <functional>
#include <limits>
#include <vector>

#include "hslab/errors.hpp"

namespace hslab {

// ---------------------------------------------------------------------------
// Adaptive quadrature
// ---------------------------------------------------------------------------

enum class EndpointTransform {
  none,
  log_left,    // integrand has a logarithmic singularity at the left endpoint
  power_left,  // integrand ~ (x-a)^e with e in (-1, 0]
  exp_right    // right endpoint is +infinity; x = a - scale*ln(u)
};

struct QuadratureSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_subdivisions = 800;
  EndpointTransform endpoint_transform = EndpointTransform::none;
  double power_left_exponent = 0.0;
  double exp_right_scale = 1.0;

  void validate() const;
};

// Integrates f over (a, b) with a global-adaptive Gauss-Kronrod 7-15 rule.
// b may be +infinity, in which case exp_right must be selected.  Returns an
// estimate whose estimated error is at most max(abs_tol, rel_tol*|result|);
// throws NonConvergence otherwise.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec = {});

// ---------------------------------------------------------------------------
// Bracketed root finding
// ---------------------------------------------------------------------------

struct RootBracket {
  double lo = 0.0;
  double hi = 0.0;
  int f_lo_sign = 0;
  int f_hi_sign = 0;

  static RootBracket from_samples(double lo, double f_lo, double hi, double f_hi);
};

// Brent's method with a guaranteed bisection fallback.  The returned point
// lies in a sub-bracket of width at most tol.
double find_root(const std::function<double(double)>& f, const RootBracket& bracket,
                 double tol);

// ---------------------------------------------------------------------------
// Adaptive explicit ODE integration (Dormand-Prince 5(4), dense output)
// ---------------------------------------------------------------------------

using OdeState = std::array<double, 2>;

struct OdeProblem {
  std::function<OdeState(double, const OdeState&)> rhs;
  double t_start = 0.0;
  double t_end = 1.0;
  OdeState initial_state{0.0, 0.0};
  double tol = 1e-10;
};

class OdeSolution {
 public:
  OdeState operator()(double t) const;
  double t_min() const { return t_min_; }
  double t_max() const { return t_max_; }
  std::size_t step_count() const { return steps_.size(); }

 private:
  friend OdeSolution integrate_ode(const OdeProblem& problem);

  struct Step {
    double t0, t1;
    OdeState y0, y1;
    OdeState f0, f1;
  };

  std::vector<Step> steps_;  // ascending in t
  double t_min_ = 0.0, t_max_ = 0.0;
};

OdeSolution integrate_ode(const OdeProblem& problem);

// ---------------------------------------------------------------------------
// Chebyshev series on [a, b]: fit, evaluation, antiderivative
// ---------------------------------------------------------------------------

class ChebyshevSeries {
 public:
  ChebyshevSeries() = default;

  // Interpolates f at n+1 Chebyshev-Lobatto nodes.
  static ChebyshevSeries fit(const std::function<double(double)>& f, double a,
                             double b, int degree);

  double operator()(double x) const;

  // Antiderivative normalized to vanish at the left endpoint.
  ChebyshevSeries antiderivative() const;

  double lower() const { return a_; }
  double upper() const { return b_; }
  // Largest magnitude among the last three coefficients; a cheap convergence
  // diagnostic for the fit.
  double tail_magnitude() const;

 private:
  double a_ = -1.0, b_ = 1.0;
  std::vector<double> coeff_;  // c0 stored with the conventional halving at eval
};

}  // namespace hslab
