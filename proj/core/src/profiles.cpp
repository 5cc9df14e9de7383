#include "hslab/profiles.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "hslab/hyp2f1.hpp"

namespace hslab {

namespace {

constexpr int kSeriesLen = 80;
constexpr int kChebDegree = 96;
constexpr double kNearZero = 0.25;

double xi_of_t(double t) { return -1.0 / std::expm1(2.0 * t); }     // in [-1, 0)
double x_inner_of_t(double t) { return -std::expm1(2.0 * t); }      // in (-1, 0)

// Coefficients of F(1/2,1/2,1,s)^2.
const std::vector<double>& f_squared_coeffs() {
  static const std::vector<double> d = [] {
    auto c = f21_series_coefficients(f_params(), kSeriesLen);
    return series_multiply(c, c, kSeriesLen);
  }();
  return d;
}

// Smooth part of the g-integrand: 1/(s(s-1)F(s)^2) + 1/s on [-1, 0].
// Near s = 0 the two terms cancel to O(1); switch to the series form
// N(s)/((s-1)F(s)^2) with N(s) = sum (d_k - d_{k+1}) s^k there.
double g_smooth_integrand(double s) {
  const double F = f21(f_params(), s);
  if (std::abs(s) >= kNearZero) {
    return 1.0 / (s * (s - 1.0) * F * F) + 1.0 / s;
  }
  const auto& d = f_squared_coeffs();
  double num = 0.0;
  for (int k = kSeriesLen - 2; k >= 0; --k) {
    num = num * s + (d[k] - d[k + 1]);
  }
  return num / ((s - 1.0) * F * F);
}

}  // namespace

GProfile::GProfile() {
  phi_ = ChebyshevSeries::fit(g_smooth_integrand, -1.0, 0.0, kChebDegree)
             .antiderivative();
  b_ = 1.0 + phi_(0.0) / M_PI;

  const double F = f21(f_params(), -1.0);
  const double Fp = f21_deriv(f_params(), -1.0);
  c2_star_ = F * (4.0 * Fp - F);
  if (std::abs(c2_star_ + 1.0 / M_PI) > 1e-10) {
    throw MatchFailure("GProfile: c2* differs from -1/pi");
  }
  if (!(b_ > 1.0 - 1.0 / M_PI && b_ < 1.0)) {
    throw MatchFailure("GProfile: asymptotic constant outside (1 - 1/pi, 1)");
  }

  // Branch agreement at ln(sqrt(2)), in value and first derivative.
  const double t = kBranchPoint;
  if (std::abs(value(t - 1e-12) - value(t + 1e-12)) > 1e-10) {
    throw MatchFailure("GProfile: branch values disagree at ln(sqrt(2))");
  }
  if (std::abs(derivative(t - 1e-12) - derivative(t + 1e-12)) > 1e-9) {
    throw MatchFailure("GProfile: branch slopes disagree at ln(sqrt(2))");
  }
}

double GProfile::smooth_inner_integral(double x) const { return phi_(x); }

double GProfile::inner_integral(double x) const {
  return phi_(x) - std::log(-x);
}

double GProfile::value(double t) const {
  if (!(t > 0.0)) {
    throw DomainError("g: requires t > 0");
  }
  if (t >= kBranchPoint) {
    return f21(f_params(), xi_of_t(t));
  }
  const double x = x_inner_of_t(t);
  const double F = f21(f_params(), x);
  return std::sqrt(-x) * F * (1.0 + inner_integral(x) / M_PI);
}

double GProfile::derivative(double t) const {
  if (!(t > 0.0)) {
    throw DomainError("g: requires t > 0");
  }
  const double e2t = std::exp(2.0 * t);
  if (t >= kBranchPoint) {
    const double xi = xi_of_t(t);
    return f21_deriv(f_params(), xi) * 2.0 * e2t * xi * xi;
  }
  const double x = x_inner_of_t(t);
  const double F = f21(f_params(), x);
  const double Fp = f21_deriv(f_params(), x);
  const double K = 1.0 + inner_integral(x) / M_PI;
  const double sq = std::sqrt(-x);
  const double dIdx = 1.0 / (x * (x - 1.0) * F * F);
  const double dgdx = -0.5 / sq * F * K + sq * Fp * K + sq * F * dIdx / M_PI;
  return dgdx * (-2.0 * e2t);
}

double GProfile::small_t_form(double t) const {
  return std::sqrt(2.0 * t) * (-std::log(2.0 * t) / M_PI + b_);
}

HProfile::HProfile(int n) : n_(n) {
  if (n < 3) {
    throw DomainError("h: requires n >= 3");
  }
  if (n == 3) {
    c1_ = 1.0;
    c2_ = 0.0;
    return;
  }

  const Hyp2F1Params pf1 = f1_params(n);
  const Hyp2F1Params pf2 = f2_params(n);
  const double f1m = f21(pf1, -1.0);
  const double f2m = f21(pf2, -1.0);
  const double q1 = f21_deriv(pf1, -1.0) / f1m;
  const double q2 = f21_deriv(pf2, -1.0) / f2m;
  const double parity = (n % 2 == 0) ? -1.0 : 1.0;  // (-1)^{n-1}
  c1_ = f2m / f1m;
  c2_ = 2.0 * parity * f1m * f2m * (q1 + q2 - (n - 1) / 2.0);
  if (std::abs(c2_) < 1e-10) {
    throw MatchFailure("HProfile: c2# vanished");
  }

  // Taylor coefficients of 1/((s-1)F1(s)^2) at s = 0.
  auto c = f21_series_coefficients(pf1, kSeriesLen);
  auto u = series_multiply(c, c, kSeriesLen);
  std::vector<double> v(kSeriesLen, 0.0);
  for (int k = 0; k < kSeriesLen; ++k) {
    v[k] = (k > 0 ? u[k - 1] : 0.0) - u[k];
  }
  p_ = series_reciprocal(v, kSeriesLen);

  psi_ = ChebyshevSeries::fit([this](double s) { return singular_remainder_over_power(s); },
                              -1.0, 0.0, kChebDegree)
             .antiderivative();

  // Branch agreement at ln(sqrt(2)) with the computed constants.
  const double t = GProfile::kBranchPoint;
  const double scale = std::max(1.0, std::abs(value(t)));
  if (std::abs(value(t - 1e-12) - value(t + 1e-12)) > 1e-8 * scale) {
    throw MatchFailure("HProfile: branch values disagree at ln(sqrt(2))");
  }
  const double dscale = std::max(1.0, std::abs(derivative(t + 1e-12)));
  if (std::abs(derivative(t - 1e-12) - derivative(t + 1e-12)) > 1e-8 * dscale) {
    throw MatchFailure("HProfile: branch slopes disagree at ln(sqrt(2))");
  }
}

// (P(s) - T(s)) / s^{n-1} where T is the degree-(n-2) Taylor polynomial of
// P(s) = 1/((s-1)F1(s)^2).  The difference is O(s^{n-1}), so the quotient is
// analytic; evaluate by series near zero to dodge the cancellation.
double HProfile::singular_remainder_over_power(double s) const {
  const int n = n_;
  if (std::abs(s) < 0.4) {
    double acc = 0.0;
    for (int k = kSeriesLen - 1; k >= n - 1; --k) {
      acc = acc * s + p_[k];
    }
    return acc;
  }
  const double F1 = f21(f1_params(n), s);
  const double P = 1.0 / ((s - 1.0) * F1 * F1);
  double taylor = 0.0;
  for (int k = n - 2; k >= 0; --k) {
    taylor = taylor * s + p_[k];
  }
  return (P - taylor) / std::pow(s, n - 1);
}

double HProfile::inner_integral(double x) const {
  if (n_ == 3) {
    throw DomainError("h: inner integral undefined for n = 3");
  }
  double acc = psi_(x);
  // ∫_{-1}^x s^{k-n+1} ds in closed form for the polynomial part.
  double x_inv_pow = 1.0;  // x^{-j}
  double parity = 1.0;     // (-1)^j
  for (int j = 1; j <= n_ - 2; ++j) {
    x_inv_pow /= x;
    parity = -parity;
    acc += p_[n_ - 2 - j] * (parity - x_inv_pow) / j;
  }
  acc += p_[n_ - 2] * std::log(-x);
  return acc;
}

double HProfile::value(double t) const {
  if (!(t > 0.0)) {
    throw DomainError("h: requires t > 0");
  }
  if (n_ == 3) return 1.0;
  if (t >= GProfile::kBranchPoint) {
    return f21(f2_params(n_), xi_of_t(t));
  }
  const double x = x_inner_of_t(t);
  const double F1 = f21(f1_params(n_), x);
  const double K = c1_ + c2_ * inner_integral(x);
  return std::pow(-x, (n_ - 1) / 2.0) * F1 * K;
}

double HProfile::derivative(double t) const {
  if (!(t > 0.0)) {
    throw DomainError("h: requires t > 0");
  }
  if (n_ == 3) return 0.0;
  const double e2t = std::exp(2.0 * t);
  if (t >= GProfile::kBranchPoint) {
    const double xi = xi_of_t(t);
    return f21_deriv(f2_params(n_), xi) * 2.0 * e2t * xi * xi;
  }
  const double x = x_inner_of_t(t);
  const double m = (n_ - 1) / 2.0;
  const double F1 = f21(f1_params(n_), x);
  const double F1p = f21_deriv(f1_params(n_), x);
  const double K = c1_ + c2_ * inner_integral(x);
  const double pw = std::pow(-x, m);
  const double dIdx = 1.0 / (std::pow(x, n_ - 1) * (x - 1.0) * F1 * F1);
  const double dhdx = -m * pw / (-x) * F1 * K + pw * F1p * K + pw * F1 * c2_ * dIdx;
  return dhdx * (-2.0 * e2t);
}

double HProfile::asymptotic_lead(double t) const {
  const int n = n_;
  if (n < 4) {
    throw DomainError("h: asymptotic lead needs n >= 4");
  }
  if (n == 4) {
    return 0.5 * c2_ / std::sqrt(2.0 * t) *
           (1.0 - 0.125 * t * t * std::log(2.0 * t));
  }
  const double parity = (n % 2 == 0) ? 1.0 : -1.0;  // (-1)^n
  const double lead = c2_ * parity / (n - 2) * std::pow(2.0 * t, -(n - 3) / 2.0);
  return lead * (1.0 + (n - 1.0) * (n - 3.0) / (24.0 * (n - 4.0)) * t * t);
}

const GProfile& g_profile() {
  static const GProfile instance;
  return instance;
}

const HProfile& h_profile(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<HProfile>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, std::make_unique<HProfile>(n)).first;
  }
  return *it->second;
}

double g_eval(double t) { return g_profile().value(t); }

double h_eval(int n, double t) { return h_profile(n).value(t); }

std::pair<double, double> matching_constants(int n) {
  if (n < 4) {
    throw DomainError("matching_constants: requires n >= 4");
  }
  const HProfile& h = h_profile(n);
  return {h.c1_sharp(), h.c2_sharp()};
}

double asymptotic_b() {
  QuadratureSpec spec;
  spec.abs_tol = 1e-13;
  spec.rel_tol = 1e-12;
  const double integral =
      integrate([](double t) { return g_smooth_integrand(-t); }, 0.0, 1.0, spec);
  return 1.0 + integral / M_PI;
}

double h_asymptotic_check(int n, double t) {
  if (!(t > 0.0 && t < 0.1)) {
    throw DomainError("h_asymptotic_check: requires 0 < t < 0.1");
  }
  const HProfile& h = h_profile(n);
  return std::abs(h.value(t) / h.asymptotic_lead(t) - 1.0);
}

RadialFactors radial_factors(int n, double t) {
  if (!(t > 0.0)) {
    throw DomainError("radial_factors: requires t > 0");
  }
  const double w = std::pow(std::sinh(t), -(n - 1) / 2.0);
  return {w * g_eval(t), w * h_eval(n, t)};
}

}  // namespace hslab
