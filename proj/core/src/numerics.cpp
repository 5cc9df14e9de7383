#include "hslab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace hslab {

namespace {

// 15-point Kronrod abscissae (positive half) and weights, with the embedded
// 7-point Gauss weights on the even-indexed abscissae.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  double integral;
  double error;
  bool splittable;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double centr = 0.5 * (a + b);
  const double hlgth = 0.5 * (b - a);
  const double dhlgth = std::abs(hlgth);

  const double fc = f(centr);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  double fv1[7], fv2[7];

  for (int j = 0; j < 3; ++j) {
    const int jtw = 2 * j + 1;  // Gauss points sit at the odd Kronrod indices
    const double absc = hlgth * kXgk[jtw];
    const double fval1 = f(centr - absc);
    const double fval2 = f(centr + absc);
    fv1[jtw] = fval1;
    fv2[jtw] = fval2;
    const double fsum = fval1 + fval2;
    resg += kWg[j] * fsum;
    resk += kWgk[jtw] * fsum;
    resabs += kWgk[jtw] * (std::abs(fval1) + std::abs(fval2));
  }
  for (int j = 0; j < 4; ++j) {
    const int jtwm1 = 2 * j;
    const double absc = hlgth * kXgk[jtwm1];
    const double fval1 = f(centr - absc);
    const double fval2 = f(centr + absc);
    fv1[jtwm1] = fval1;
    fv2[jtwm1] = fval2;
    const double fsum = fval1 + fval2;
    resk += kWgk[jtwm1] * fsum;
    resabs += kWgk[jtwm1] * (std::abs(fval1) + std::abs(fval2));
  }

  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
  }

  const double result = resk * hlgth;
  resabs *= dhlgth;
  resasc *= dhlgth;
  double err = std::abs((resk - resg) * hlgth);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  const double uflow = std::numeric_limits<double>::min();
  const double epmach = std::numeric_limits<double>::epsilon();
  if (resabs > uflow / (50.0 * epmach)) {
    err = std::max(epmach * 50.0 * resabs, err);
  }
  return Panel{a, b, result, err, true};
}

double adaptive_gk(const std::function<double(double)>& f, double a, double b,
                   const QuadratureSpec& spec) {
  std::vector<Panel> panels;
  panels.push_back(gk15(f, a, b));

  const double epmach = std::numeric_limits<double>::epsilon();
  for (;;) {
    double total = 0.0, total_err = 0.0;
    for (const Panel& p : panels) {
      total += p.integral;
      total_err += p.error;
    }
    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
    if (total_err <= tol) return total;
    if (static_cast<int>(panels.size()) >= spec.max_subdivisions) {
      throw NonConvergence("integrate: error " + std::to_string(total_err) +
                           " above tolerance after " +
                           std::to_string(panels.size()) + " subdivisions");
    }

    std::size_t worst = panels.size();
    double worst_err = -1.0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      if (panels[i].splittable && panels[i].error > worst_err) {
        worst_err = panels[i].error;
        worst = i;
      }
    }
    if (worst == panels.size()) {
      throw NonConvergence("integrate: no splittable panel left, error " +
                           std::to_string(total_err));
    }

    Panel p = panels[worst];
    const double mid = 0.5 * (p.a + p.b);
    if (mid <= std::min(p.a, p.b) || mid >= std::max(p.a, p.b) ||
        std::abs(p.b - p.a) < 100.0 * epmach * std::max({std::abs(p.a), std::abs(p.b), 1e-300})) {
      panels[worst].splittable = false;
      continue;
    }
    panels[worst] = gk15(f, p.a, mid);
    panels.push_back(gk15(f, mid, p.b));
  }
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw DomainError("QuadratureSpec: tolerances must be positive");
  }
  if (max_subdivisions < 1) {
    throw DomainError("QuadratureSpec: max_subdivisions must be >= 1");
  }
  if (endpoint_transform == EndpointTransform::power_left &&
      (power_left_exponent <= -1.0 || power_left_exponent > 0.0)) {
    throw DomainError("QuadratureSpec: power_left exponent must lie in (-1, 0]");
  }
  if (endpoint_transform == EndpointTransform::exp_right && !(exp_right_scale > 0.0)) {
    throw DomainError("QuadratureSpec: exp_right scale must be positive");
  }
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec) {
  spec.validate();
  const bool infinite = std::isinf(b);
  if (!infinite && !(a < b)) {
    throw DomainError("integrate: requires a < b");
  }
  if (infinite && spec.endpoint_transform != EndpointTransform::exp_right) {
    throw DomainError("integrate: infinite upper limit requires exp_right");
  }

  switch (spec.endpoint_transform) {
    case EndpointTransform::none:
      return adaptive_gk(f, a, b, spec);
    case EndpointTransform::power_left: {
      // x = a + u^k with k = 1/(1+e) removes an (x-a)^e singularity.
      const double k = 1.0 / (1.0 + spec.power_left_exponent);
      const double ub = std::pow(b - a, 1.0 / k);
      auto g = [&](double u) { return f(a + std::pow(u, k)) * k * std::pow(u, k - 1.0); };
      return adaptive_gk(g, 0.0, ub, spec);
    }
    case EndpointTransform::log_left: {
      // x = a + exp(-1/u) turns ln(x-a) into a bounded, flat factor.
      if (!(b - a < 1.0)) {
        throw DomainError("integrate: log_left requires b - a < 1");
      }
      const double ub = -1.0 / std::log(b - a);
      auto g = [&](double u) {
        const double w = std::exp(-1.0 / u);
        // Once w underflows, f*w -> 0 for any integrable log singularity.
        if (w < std::numeric_limits<double>::min()) return 0.0;
        return f(a + w) * w / (u * u);
      };
      return adaptive_gk(g, 0.0, ub, spec);
    }
    case EndpointTransform::exp_right: {
      if (!infinite) {
        throw DomainError("integrate: exp_right requires b = +infinity");
      }
      const double s = spec.exp_right_scale;
      auto g = [&](double u) { return f(a - s * std::log(u)) * s / u; };
      return adaptive_gk(g, 0.0, 1.0, spec);
    }
  }
  throw Error("integrate: unreachable");
}

RootBracket RootBracket::from_samples(double lo, double f_lo, double hi, double f_hi) {
  auto sgn = [](double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); };
  return RootBracket{lo, hi, sgn(f_lo), sgn(f_hi)};
}

double find_root(const std::function<double(double)>& f, const RootBracket& bracket,
                 double tol) {
  if (!(bracket.lo < bracket.hi)) {
    throw BadBracket("find_root: requires lo < hi");
  }
  if (bracket.f_lo_sign == bracket.f_hi_sign) {
    throw BadBracket("find_root: endpoint signs must differ");
  }
  if (!(tol > 0.0)) {
    throw DomainError("find_root: tol must be positive");
  }

  double a = bracket.lo, b = bracket.hi;
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) {
    throw BadBracket("find_root: no sign change at the recorded endpoints");
  }

  // Brent: inverse quadratic / secant with bisection fallback.
  double c = a, fc = fa;
  double d = b - a, e = d;
  const double eps = std::numeric_limits<double>::epsilon();
  for (int iter = 0; iter < 200; ++iter) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = f(b);
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
  }
  return b;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
constexpr double kB5[7] = {35.0 / 384,      0.0,  500.0 / 1113, 125.0 / 192,
                           -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr double kB4[7] = {5179.0 / 57600,  0.0,        7571.0 / 16695, 393.0 / 640,
                           -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

OdeState axpy(const OdeState& y, double h, const OdeState (&k)[7], const double* w,
              int stages) {
  OdeState out = y;
  for (int s = 0; s < stages; ++s) {
    if (w[s] == 0.0) continue;
    out[0] += h * w[s] * k[s][0];
    out[1] += h * w[s] * k[s][1];
  }
  return out;
}

}  // namespace

OdeSolution integrate_ode(const OdeProblem& problem) {
  if (problem.t_start == problem.t_end) {
    throw DomainError("integrate_ode: t_start must differ from t_end");
  }
  if (!(problem.tol > 0.0)) {
    throw DomainError("integrate_ode: tol must be positive");
  }

  const double dir = problem.t_end > problem.t_start ? 1.0 : -1.0;
  const double span = std::abs(problem.t_end - problem.t_start);
  double t = problem.t_start;
  OdeState y = problem.initial_state;
  OdeState f0 = problem.rhs(t, y);
  double h = dir * span / 100.0;

  OdeSolution sol;
  const double atol = problem.tol, rtol = problem.tol;

  while (dir * (problem.t_end - t) > 0.0) {
    if (dir * (t + h - problem.t_end) > 0.0) h = problem.t_end - t;
    if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(t))) {
      throw StepFailure("integrate_ode: step size underflow at t = " + std::to_string(t));
    }

    OdeState k[7];
    k[0] = f0;
    for (int s = 1; s < 7; ++s) {
      OdeState ys = axpy(y, h, k, kA[s], s);
      k[s] = problem.rhs(t + kC[s] * h, ys);
    }
    OdeState y5 = axpy(y, h, k, kB5, 7);
    OdeState y4 = axpy(y, h, k, kB4, 7);

    double err = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
      const double e = (y5[i] - y4[i]) / sc;
      err += e * e;
    }
    err = std::sqrt(0.5 * err);

    if (err <= 1.0) {
      OdeSolution::Step step;
      step.t0 = t;
      step.t1 = t + h;
      step.y0 = y;
      step.y1 = y5;
      step.f0 = f0;
      step.f1 = k[6];  // FSAL: last stage is the derivative at t + h
      sol.steps_.push_back(step);
      t += h;
      y = y5;
      f0 = k[6];
    }
    const double factor = std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
    h *= factor;
  }

  if (dir < 0.0) {
    std::reverse(sol.steps_.begin(), sol.steps_.end());
    for (auto& s : sol.steps_) {
      std::swap(s.t0, s.t1);
      std::swap(s.y0, s.y1);
      std::swap(s.f0, s.f1);
    }
  }
  sol.t_min_ = sol.steps_.front().t0;
  sol.t_max_ = sol.steps_.back().t1;
  return sol;
}

OdeState OdeSolution::operator()(double t) const {
  const double slack = 1e-9 * std::max(1.0, std::abs(t_max_ - t_min_));
  if (t < t_min_ - slack || t > t_max_ + slack) {
    throw DomainError("OdeSolution: query outside the integration range");
  }
  t = std::clamp(t, t_min_, t_max_);

  std::size_t lo = 0, hi = steps_.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (steps_[mid].t1 < t) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  const Step& s = steps_[lo];
  const double h = s.t1 - s.t0;
  const double u = (t - s.t0) / h;

  // Cubic Hermite in u using the stored endpoint derivatives.
  const double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
  const double h10 = u * (1 - u) * (1 - u);
  const double h01 = u * u * (3 - 2 * u);
  const double h11 = u * u * (u - 1);
  OdeState out;
  for (int i = 0; i < 2; ++i) {
    out[i] = h00 * s.y0[i] + h10 * h * s.f0[i] + h01 * s.y1[i] + h11 * h * s.f1[i];
  }
  return out;
}

ChebyshevSeries ChebyshevSeries::fit(const std::function<double(double)>& f, double a,
                                     double b, int degree) {
  if (!(a < b) || degree < 2) {
    throw DomainError("ChebyshevSeries::fit: bad interval or degree");
  }
  const int n = degree;
  std::vector<double> values(n + 1);
  for (int j = 0; j <= n; ++j) {
    const double xi = std::cos(M_PI * j / n);  // Lobatto nodes
    const double x = 0.5 * (a + b) + 0.5 * (b - a) * xi;
    values[j] = f(x);
  }
  ChebyshevSeries s;
  s.a_ = a;
  s.b_ = b;
  s.coeff_.assign(n + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    double acc = 0.5 * (values[0] + (k % 2 == 0 ? values[n] : -values[n]));
    for (int j = 1; j < n; ++j) {
      acc += values[j] * std::cos(M_PI * j * k / n);
    }
    s.coeff_[k] = 2.0 * acc / n;
  }
  return s;
}

double ChebyshevSeries::operator()(double x) const {
  const double xi = (2.0 * x - (a_ + b_)) / (b_ - a_);
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t k = coeff_.size(); k-- > 1;) {
    const double b0 = 2.0 * xi * b1 - b2 + coeff_[k];
    b2 = b1;
    b1 = b0;
  }
  return xi * b1 - b2 + 0.5 * coeff_[0];
}

ChebyshevSeries ChebyshevSeries::antiderivative() const {
  const std::size_t n = coeff_.size();
  ChebyshevSeries out;
  out.a_ = a_;
  out.b_ = b_;
  out.coeff_.assign(n + 1, 0.0);
  const double con = 0.25 * (b_ - a_);
  for (std::size_t k = 1; k < n; ++k) {
    const double next = (k + 1 < n) ? coeff_[k + 1] : 0.0;
    const double prev = (k == 1) ? 2.0 * 0.5 * coeff_[0] : coeff_[k - 1];
    out.coeff_[k] = con * (prev - next) / static_cast<double>(k);
  }
  out.coeff_[n] = con * coeff_[n - 1] / static_cast<double>(n);
  const double at_a = out(a_);
  out.coeff_[0] -= 2.0 * at_a;
  return out;
}

double ChebyshevSeries::tail_magnitude() const {
  double m = 0.0;
  for (std::size_t k = coeff_.size() >= 3 ? coeff_.size() - 3 : 0; k < coeff_.size(); ++k) {
    m = std::max(m, std::abs(coeff_[k]));
  }
  return m;
}

}  // namespace hslab
