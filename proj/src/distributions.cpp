#include "contrastlab/distributions.hpp"

#include "contrastlab/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace contrastlab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Continued fraction for I_x(a, b) (modified Lentz), valid for
// x < (a + 1) / (a + b + 2).
double beta_fraction(double a, double b, double x) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-16;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 10000; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < eps) return h;
  }
  throw NumericalError("incomplete beta continued fraction did not converge");
}

void check_df(double df) {
  if (!(df >= 1.0)) {
    throw ValidationError("degrees of freedom must be at least 1, got " + std::to_string(df));
  }
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  return incomplete_beta(a, b, x, 1.0 - x);
}

double incomplete_beta(double a, double b, double x, double y) {
  if (std::isnan(x) || std::isnan(y)) return kNaN;
  if (!(a > 0.0) || !(b > 0.0)) throw ValidationError("beta parameters must be positive");
  if (x <= 0.0) return 0.0;
  if (y <= 0.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log(y);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_fraction(a, b, x) / a;
  return 1.0 - front * beta_fraction(b, a, y) / b;
}

double t_pdf(double t, double df) {
  check_df(df);
  const double log_norm = std::lgamma((df + 1.0) / 2.0) - std::lgamma(df / 2.0) -
                          0.5 * std::log(df * std::numbers::pi);
  return std::exp(log_norm - (df + 1.0) / 2.0 * std::log1p(t * t / df));
}

double t_two_sided_p(double t, double df) {
  check_df(df);
  if (std::isnan(t)) return kNaN;
  if (std::isinf(t)) return 0.0;
  const double t2 = t * t;
  return incomplete_beta(df / 2.0, 0.5, df / (df + t2), t2 / (df + t2));
}

double t_cdf(double t, double df) {
  check_df(df);
  if (std::isnan(t)) return kNaN;
  if (t == 0.0) return 0.5;
  const double tail = 0.5 * t_two_sided_p(t, df);
  return t < 0.0 ? tail : 1.0 - tail;
}

double t_quantile(double p, double df) {
  check_df(df);
  if (!(p > 0.0 && p < 1.0)) {
    throw ValidationError("quantile probability must lie in (0, 1), got " + std::to_string(p));
  }
  if (p == 0.5) return 0.0;
  // Solve for the upper tail q = P(T >= t) with t > 0, then restore the sign.
  const double q = p < 0.5 ? p : 1.0 - p;
  auto upper = [df](double t) { return 0.5 * t_two_sided_p(t, df); };

  double lo = 0.0;
  double hi = 1.0;
  while (upper(hi) > q) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) throw NumericalError("t quantile bracket overflow");
  }
  double t = 0.5 * (lo + hi);
  for (int iter = 0; iter < 300; ++iter) {
    const double f = upper(t) - q;
    if (f > 0.0) {
      lo = t;
    } else {
      hi = t;
    }
    const double dens = t_pdf(t, df);
    double next = dens > 0.0 ? t + f / dens : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= 1e-15 * std::max(1.0, std::abs(t))) {
      t = next;
      break;
    }
    t = next;
  }
  return p < 0.5 ? -t : t;
}

double f_sf(double f, double df1, double df2) {
  if (!(df1 > 0.0) || !(df2 > 0.0)) {
    throw ValidationError("F degrees of freedom must be positive");
  }
  if (std::isnan(f)) return kNaN;
  if (f <= 0.0) return 1.0;
  if (std::isinf(f)) return 0.0;
  const double denom = df2 + df1 * f;
  return incomplete_beta(df2 / 2.0, df1 / 2.0, df2 / denom, df1 * f / denom);
}

}  // namespace contrastlab
