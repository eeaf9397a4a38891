#pragma once

namespace fmn {

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

/// Regularized incomplete beta I_x(a, b), a, b > 0, x in [0, 1].
double incomplete_beta(double a, double b, double x);

/// Two-tailed p-value of a Student-t statistic with df degrees of freedom.
double student_t_two_tailed(double t, double df);

/// Chi-square survival function P(X >= x) with df degrees of freedom.
double chi_squared_sf(double x, double df);

}  // namespace fmn
