#pragma once

namespace vbscore::stats {

// Regularized incomplete beta function I_x(a, b), computed with the
// continued-fraction expansion (Lentz's method) plus the symmetry
// transform for x > (a+1)/(a+b+2).
double regularized_incomplete_beta(double a, double b, double x);

// Two-sided p-value for a Student-t statistic with df degrees of freedom.
double t_two_sided_p(double t, double df);

// Upper-tail probability P(F > f) for an F statistic with (df1, df2)
// degrees of freedom. f <= 0 gives 1.
double f_upper_tail_p(double f, double df1, double df2);

}  // namespace vbscore::stats
