#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qheat/core.hpp"

namespace qheat {

enum class Axis { Full, Half };  // Z or N_0

// Smooth cutoff: 1 on [0,1], 0 on [2,inf), C-infinity in between.
double taper(double y);

// sum over mu in L \ {0} with |mu|^2 < 2X of mu^e |mu|^{-s} taper(|mu|^2 / X).
// Outer coordinate is split across threads; partials are reduced in index order,
// so the OpenMP and serial variants return identical bits.
cplx tapered_power_sum_serial(const std::vector<Axis>& axes, const std::vector<int>& e, cplx s, double X);
cplx tapered_power_sum_omp(const std::vector<Axis>& axes, const std::vector<int>& e, cplx s, double X);

// Continuum replacement for the removed part, sum over mu of mu^e |mu|^{-s} (1 - taper).
// Even exponents only; Re s must exceed |e| + dim.
cplx tapered_tail(const std::vector<Axis>& axes, const std::vector<int>& e, cplx s, double X);

// sum over the box |mu|_inf <= R in Z^n of exp(-(t/2) mu^T C mu)
double quadratic_form_sum_serial(const Eigen::MatrixXd& C, double t, int R);
double quadratic_form_sum_omp(const Eigen::MatrixXd& C, double t, int R);

}  // namespace qheat
