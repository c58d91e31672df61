#pragma once

namespace contrastlab {

// Regularized incomplete beta I_x(a, b). The second form takes y = 1 - x
// computed by the caller, which keeps full precision when x is close to 1.
double incomplete_beta(double a, double b, double x);
double incomplete_beta(double a, double b, double x, double y);

// Student t with df >= 1 (non-integer df allowed). Throws ValidationError
// for df < 1.
double t_pdf(double t, double df);
double t_cdf(double t, double df);
// P(|T| >= |t|).
double t_two_sided_p(double t, double df);
// Inverse CDF; p must lie strictly inside (0, 1).
double t_quantile(double p, double df);

// Upper tail of the F distribution, P(F >= f).
double f_sf(double f, double df1, double df2);

}  // namespace contrastlab
