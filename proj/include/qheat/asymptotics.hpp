#pragma once

#include <functional>
#include <vector>

#include "qheat/heat_traces.hpp"

namespace qheat {

using TraceFn = std::function<HeatTraceValue(double)>;

// t = 0.1 * 2^{-j}, j = 0..12
std::vector<double> default_grid();

struct AsymptoticsResult {
    double pole_order = 0.0;
    double leading_coefficient = 0.0;
    double leading_error = 0.0;
    double fit_residual = 0.0;
    bool confident = false;
    std::vector<double> coefficients;  // A_0..A_K
    std::vector<double> errors;
    std::vector<double> grid;
};

// Least squares of log|trace| against log t plus a polynomial in sqrt(t) (degree 4); returns -slope.
// Large-t points are dropped while the residual is too big and two decades remain.
// Throws ConvergenceError when the trace vanishes on the grid or the fit residual exceeds `threshold`.
double detect_pole_order(const TraceFn& trace, const std::vector<double>& grid = default_grid(),
                         double threshold = 1e-4, double* residual = nullptr);

// lim (4 pi t)^p trace(t), by Neville extrapolation in sqrt(t) on the smallest grid points.
double leading_coefficient(const TraceFn& trace, double p, const std::vector<double>& grid = default_grid(),
                           double* error = nullptr);

// A_0..A_K of (4 pi t)^p trace(t) = sum_k A_k t^{k/2}. With pure_theta the trace is a power of
// theta, the remainder is exponentially small, and A_k (k >= 1) are reported as 0 with the observed
// remainder as their bound.
AsymptoticsResult heat_coefficients(const TraceFn& trace, double p, int K, const std::vector<double>& grid = default_grid(),
                                    bool pure_theta = false);

// Heat-trace closures for the dispatch in heat_traces.
TraceFn trace_of(const SpectralModel& model, const PrecisionConfig& pc = {});
bool is_pure_theta(const SpectralModel& model);

}  // namespace qheat
