#pragma once

#include <vector>

#include "hslab/errors.hpp"

namespace hslab {

// Parameter triple (a, b, c) of the Gauss hypergeometric series.
struct Hyp2F1Params {
  double a = 0.0;
  double b = 0.0;
  double c = 1.0;
};

// The three triples used throughout: F = F(1/2,1/2,1,.), and for dimension n
// F1 = F((n-1)/2,(n-1)/2,n-1,.), F2 = F((n-1)/2,-(n-3)/2,1,.).
Hyp2F1Params f_params();
Hyp2F1Params f1_params(int n);
Hyp2F1Params f2_params(int n);

// Value of the (analytically continued) series for z <= 0.  Arguments in
// (-1/2, 0] are summed directly; anything at or below -1/2 is first moved by
// the Pfaff transform z -> z/(z-1), which lands every argument we need in
// [0, 1/2].  Series with a non-positive-integer numerator parameter terminate
// and are summed exactly.
double f21(const Hyp2F1Params& params, double z);

// dF/dz via the contiguous identity F'(a,b;c;z) = (ab/c) F(a+1,b+1;c+1;z).
double f21_deriv(const Hyp2F1Params& params, double z);

// F1'(w)/F1(w) for w in [-1, 0], n >= 4.
double log_deriv_q(int n, double w);

// Taylor coefficients of the series around z = 0 (count terms).
std::vector<double> f21_series_coefficients(const Hyp2F1Params& params, int count);

// Gamma function on the positive real axis, Lanczos approximation.
double log_gamma(double x);
double gamma_fn(double x);

// Power-series helpers used for the singular-part subtraction in profiles.
std::vector<double> series_multiply(const std::vector<double>& u,
                                    const std::vector<double>& v, int count);
std::vector<double> series_reciprocal(const std::vector<double>& v, int count);

}  // namespace hslab
