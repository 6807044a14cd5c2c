#pragma once

#include <string>

#include "qheat/models.hpp"

namespace qheat {

struct HeatTraceValue {
    double t = 0.0;
    double value = 0.0;
    double error_bound = 0.0;
    std::string model;
};

HeatTraceValue torus_heat_trace(int N, double t, const PrecisionConfig& pc = {});
// 1/2 - sum_{k>=1} (k-1) e^{-t k^2}
HeatTraceValue toeplitz_heat_trace(double t, const PrecisionConfig& pc = {});
// -1/2 - sum_{k>=1} (k+1) e^{-t k^2}: the iterated limit before the boundary terms are added back
HeatTraceValue toeplitz_prelimit_value(double t, const PrecisionConfig& pc = {});
HeatTraceValue heisenberg_heat_trace(int N, double t, bool reduced, const PrecisionConfig& pc = {});
HeatTraceValue nc_torus_heat_trace(int N, int Tf, double t, bool complex_twists, const PrecisionConfig& pc = {});
HeatTraceValue suq2_gauss_trace(double r, double t, const PrecisionConfig& pc = {});
HeatTraceValue general_gaussian_trace(const GaussianFunctional& g, double t, const PrecisionConfig& pc = {});

// Dispatch on a model descriptor.
HeatTraceValue heat_trace(const SpectralModel& model, double t, const PrecisionConfig& pc = {});

// Direct sum of exp(t * eigenvalue) over enumerate(family, radius); only for models
// whose spectrum is summable (no free twist coordinates).
BoundedValue enumerated_heat_trace(const SpectralModel& model, double t, int radius);

}  // namespace qheat
