#pragma once

#include "qheat/core.hpp"

namespace qheat {

// B_{2k} for k = 1..40 (B_2 = 1/6, B_4 = -1/30, ...).
double bernoulli_even(int k);

BoundedValue riemann_zeta(cplx s, const PrecisionConfig& pc = {});
// zeta(s, a) = sum_{n>=0} (n + a)^{-s}, a > 0, continued to all s != 1.
BoundedValue hurwitz_zeta(cplx s, double a, const PrecisionConfig& pc = {});
BoundedValue dirichlet_beta(cplx s, const PrecisionConfig& pc = {});

cplx log_gamma(cplx z);
cplx gamma(cplx z);
// 1/Gamma(z), exactly 0 at z = 0, -1, -2, ...
cplx rgamma(cplx z);
cplx digamma(cplx z);

BoundedValue upper_incomplete_gamma(cplx a, double x, const PrecisionConfig& pc = {});
// |Gamma(a, x)| <= x^{Re a - 1} e^{-x} / (1 - max(Re a - 1, 0)/x), valid when x > max(Re a - 1, 0).
double incomplete_gamma_bound(double re_a, double x);
double expint_e1(double x);

double erf(double x);
double erfc(double x);

// S_j(t) = sum_{k>=1} k^j exp(-t k^2), j in {0,1,2}
BoundedValue gauss_sum(int j, double t, const PrecisionConfig& pc = {});
// theta(t) = sum_{k in Z} exp(-t k^2)
BoundedValue theta_full(double t, const PrecisionConfig& pc = {});

// Bound on sum_{k>K} k^j exp(-t k^2) for K past the peak sqrt(j/(2t)).
double gauss_tail_bound(int j, double t, double K);

}  // namespace qheat
