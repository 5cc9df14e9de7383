#include "hslab/hyp2f1.hpp"

#include <cmath>
#include <cstdlib>

namespace hslab {

namespace {

constexpr int kHardCap = 100000;
constexpr double kTermTol = 1e-17;

bool is_nonpositive_integer(double x) {
  return x <= 1e-12 && std::abs(x - std::round(x)) < 1e-12;
}

// Direct summation; valid for |z| < 1 and exact for terminating series.
double series_sum(double a, double b, double c, double z) {
  double term = 1.0, sum = 1.0;
  int growth_streak = 0;
  for (int k = 0; k < kHardCap; ++k) {
    const double fa = a + k, fb = b + k;
    if (std::abs(fa) < 1e-12 || std::abs(fb) < 1e-12) return sum;  // terminated
    const double prev = std::abs(term);
    term *= fa * fb / ((c + k) * (k + 1.0)) * z;
    sum += term;
    if (std::abs(term) < kTermTol * std::abs(sum)) return sum;
    growth_streak = (std::abs(term) > prev) ? growth_streak + 1 : 0;
    if (growth_streak > 50) {
      throw DivergentSeries("f21: term growth detected (a=" + std::to_string(a) +
                            ", b=" + std::to_string(b) + ", c=" + std::to_string(c) +
                            ", z=" + std::to_string(z) + ")");
    }
  }
  throw DivergentSeries("f21: series cap reached at z = " + std::to_string(z));
}

}  // namespace

Hyp2F1Params f_params() { return {0.5, 0.5, 1.0}; }

Hyp2F1Params f1_params(int n) {
  return {(n - 1) / 2.0, (n - 1) / 2.0, static_cast<double>(n - 1)};
}

Hyp2F1Params f2_params(int n) {
  return {(n - 1) / 2.0, -(n - 3) / 2.0, 1.0};
}

double f21(const Hyp2F1Params& params, double z) {
  const double a = params.a, b = params.b, c = params.c;
  if (is_nonpositive_integer(c)) {
    throw DomainError("f21: c must not be a non-positive integer");
  }
  if (z > 0.0) {
    throw DomainError("f21: only z <= 0 is supported");
  }
  if (z == 0.0) return 1.0;
  if (is_nonpositive_integer(a) || is_nonpositive_integer(b)) {
    return series_sum(a, b, c, z);  // polynomial; exact for any z
  }
  if (z > -0.5) {
    return series_sum(a, b, c, z);
  }
  // Pfaff: F(a,b;c;z) = (1-z)^{-a} F(a, c-b; c; z/(z-1)).
  const double w = z / (z - 1.0);
  return std::pow(1.0 - z, -a) * series_sum(a, c - b, c, w);
}

double f21_deriv(const Hyp2F1Params& params, double z) {
  const double factor = params.a * params.b / params.c;
  return factor * f21({params.a + 1.0, params.b + 1.0, params.c + 1.0}, z);
}

double log_deriv_q(int n, double w) {
  if (n < 4) {
    throw DomainError("log_deriv_q: requires n >= 4");
  }
  if (w < -1.0 || w > 0.0) {
    throw DomainError("log_deriv_q: requires w in [-1, 0]");
  }
  const Hyp2F1Params p = f1_params(n);
  const double value = f21(p, w);
  return f21_deriv(p, w) / value;
}

std::vector<double> f21_series_coefficients(const Hyp2F1Params& params, int count) {
  std::vector<double> coeff(count, 0.0);
  double term = 1.0;
  for (int k = 0; k < count; ++k) {
    coeff[k] = term;
    term *= (params.a + k) * (params.b + k) / ((params.c + k) * (k + 1.0));
  }
  return coeff;
}

namespace {

// Lanczos g = 7, 9 coefficients; ~1e-15 relative accuracy for x >= 0.5.
constexpr double kLanczos[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

double log_gamma_core(double x) {
  double acc = kLanczos[0];
  for (int i = 1; i < 9; ++i) {
    acc += kLanczos[i] / (x - 1.0 + i);
  }
  const double t = x + 6.5;  // x + g - 0.5
  return 0.5 * std::log(2.0 * M_PI) + (x - 0.5) * std::log(t) - t + std::log(acc);
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw DomainError("log_gamma: requires x > 0");
  }
  if (x < 0.5) {
    return log_gamma_core(x + 1.0) - std::log(x);
  }
  return log_gamma_core(x);
}

double gamma_fn(double x) { return std::exp(log_gamma(x)); }

std::vector<double> series_multiply(const std::vector<double>& u,
                                    const std::vector<double>& v, int count) {
  std::vector<double> out(count, 0.0);
  for (int i = 0; i < count && i < static_cast<int>(u.size()); ++i) {
    for (int j = 0; j + i < count && j < static_cast<int>(v.size()); ++j) {
      out[i + j] += u[i] * v[j];
    }
  }
  return out;
}

std::vector<double> series_reciprocal(const std::vector<double>& v, int count) {
  if (v.empty() || v[0] == 0.0) {
    throw DomainError("series_reciprocal: constant term must be nonzero");
  }
  std::vector<double> out(count, 0.0);
  out[0] = 1.0 / v[0];
  for (int k = 1; k < count; ++k) {
    double acc = 0.0;
    for (int j = 1; j <= k && j < static_cast<int>(v.size()); ++j) {
      acc += v[j] * out[k - j];
    }
    out[k] = -acc / v[0];
  }
  return out;
}

}  // namespace hslab
