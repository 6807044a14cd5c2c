#pragma once

#include <array>
#include <string>
#include <vector>

#include "qheat/core.hpp"

namespace qheat {

struct OracleComparison {
    std::string model;
    std::vector<cplx> z;
    double t = 0.0;
    BoundedValue direct_value;
    BoundedValue closedform_value;
    double tolerance = 0.0;
    bool agree = false;
};

OracleComparison compare(std::string model, std::vector<cplx> z, double t, const BoundedValue& direct,
                         const BoundedValue& closed, double tol);

// F = sum_{m,n>=1} exp(-t (n-m)^2) n^{d1 z1} m^{d2 z2}; needs Re(d2 z2) < -1, Re(d1 z1) <= 0.
BoundedValue toeplitz_gauged_sum(cplx z1, cplx z2, double t, double delta1 = 1.0, double delta2 = 1.0);

// G(z2, t) = sum_{k>=0} e^{-tk^2} (zeta(-a) - sum_{m<=k} m^a) + zeta(-a) sum_{k>=1} e^{-tk^2}, a = delta2 z2.
BoundedValue toeplitz_continued_form(cplx z2, double t, double delta2 = 1.0);

// H(z) = sum_{k in Z} sum_{m>=1} sum_{l>-m} exp(-rt (k+l)^2) |k|^{z1} m^{z2} |l|^{z3}, with 0^z = 1.
// Summed directly in m; needs Re z2 < -1 and Re(z1 + z3) < -1.
BoundedValue suq2_gauged_sum(const std::array<cplx, 3>& z, double r, double t);

// Same function after summing m first: zeta(-z2) minus partial sums. Holomorphic in z2 != -1.
BoundedValue suq2_continued_expression(const std::array<cplx, 3>& z, double r, double t);

struct SUq2Reduction {
    BoundedValue pair_sum, pair_sum_rhs;        // sum_{k,l>=1} e^{-u(k+l)^2} and S_1 - S_0
    BoundedValue weighted_sum, weighted_rhs;    // sum_{k,l>=1} l e^{-u(k+l)^2} and (S_2 - S_1)/2
    BoundedValue intermediate;                  // value before the two double sums are reduced
    BoundedValue closed_form;
};

SUq2Reduction suq2_reduction(double t, double r);
// The closed form assembled from the intermediate expression with the double sums reduced.
BoundedValue suq2_continued_form(double t, double r);

// Brute-force partial sum of H over |k|, m, |l| <= R (no tail).
cplx suq2_box_sum(const std::array<cplx, 3>& z, double r, double t, int R);

}  // namespace qheat
