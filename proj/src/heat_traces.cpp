#include "qheat/heat_traces.hpp"

#include <cmath>

#include "qheat/kernels.hpp"
#include "qheat/special_functions.hpp"

namespace qheat {

namespace {

void check_t(double t) {
    if (!(t > 0)) throw DomainError("heat trace: t must be positive");
}

BoundedValue power(const BoundedValue& b, int n) {
    BoundedValue acc{1.0, 0.0, 0};
    for (int i = 0; i < n; ++i) acc = acc * b;
    return acc;
}

HeatTraceValue make(double t, const BoundedValue& v, const std::string& tag) {
    return {t, v.value.real(), v.error_bound + rounding_slack(std::abs(v.value), 4), tag};
}

// Bound for the part of sum_{mu in Z^n} exp(-c |mu|^2) outside the box |mu|_inf <= R.
double box_tail(int n, double c, int R) {
    double inner = 1.0;
    for (int k = 1; k <= R; ++k) inner += 2.0 * std::exp(-c * double(k) * k);
    double tau = 2.0 * gauss_tail_bound(0, c, R);
    return std::pow(inner + tau, n) - std::pow(inner, n);
}

}  // namespace

HeatTraceValue torus_heat_trace(int N, double t, const PrecisionConfig& pc) {
    check_t(t);
    if (N < 0) throw DomainError("torus_heat_trace: N must be nonnegative");
    return make(t, power(theta_full(t, pc), N), "torus");
}

HeatTraceValue toeplitz_heat_trace(double t, const PrecisionConfig& pc) {
    check_t(t);
    BoundedValue s0 = gauss_sum(0, t, pc), s1 = gauss_sum(1, t, pc);
    return make(t, BoundedValue{0.5, 0.0, 0} - (s1 - s0), "toeplitz");
}

HeatTraceValue toeplitz_prelimit_value(double t, const PrecisionConfig& pc) {
    check_t(t);
    BoundedValue s0 = gauss_sum(0, t, pc), s1 = gauss_sum(1, t, pc);
    return make(t, BoundedValue{-0.5, 0.0, 0} - s1 - s0, "toeplitz-prelimit");
}

HeatTraceValue heisenberg_heat_trace(int N, double t, bool reduced, const PrecisionConfig& pc) {
    check_t(t);
    if (N < 1) throw DomainError("heisenberg_heat_trace: N must be positive");
    BoundedValue v = power(theta_full(t, pc), 2 * N);
    if (!reduced) v = -1.0 * v;
    return make(t, v, reduced ? "heisenberg-r" : "heisenberg");
}

HeatTraceValue nc_torus_heat_trace(int N, int Tf, double t, bool complex_twists, const PrecisionConfig& pc) {
    check_t(t);
    if (N < 1 || Tf < 0) throw DomainError("nc_torus_heat_trace: need N >= 1 and Tf >= 0");
    BoundedValue v = power(theta_full(t, pc), N);
    if (!complex_twists && Tf % 2 == 1) v = -1.0 * v;
    return make(t, v, complex_twists ? "nctorus-c" : "nctorus");
}

HeatTraceValue suq2_gauss_trace(double r, double t, const PrecisionConfig& pc) {
    check_t(t);
    if (!(r > 0)) throw DomainError("suq2_gauss_trace: r must be positive");
    const double u = r * t;
    BoundedValue s0 = gauss_sum(0, u, pc), s1 = gauss_sum(1, u, pc), s2 = gauss_sum(2, u, pc);
    BoundedValue v = BoundedValue{1.0 / 12.0, 0.0, 0} + (13.0 / 12.0) * (s0 + s1) - s2;
    return make(t, v, "suq2");
}

HeatTraceValue general_gaussian_trace(const GaussianFunctional& g, double t, const PrecisionConfig& pc) {
    check_t(t);
    g.validate();
    if (!g.driftless()) throw UnsupportedError("general_gaussian_trace: drifted Gaussians are not traced");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.cov);
    const double lmin = es.eigenvalues().minCoeff();
    if (!(lmin > 1e-12)) throw ConvergenceError("general_gaussian_trace: covariance not positive definite; the sum diverges");
    const int n = static_cast<int>(g.cov.rows());
    const double c = 0.5 * t * lmin;
    int R = 1;
    const double target = pc.tolerance;
    while (box_tail(n, c, R) > target) ++R;
    if (std::pow(2.0 * R + 1.0, n) > double(pc.max_terms) * 10) throw ConvergenceError("general_gaussian_trace: box too large");
    double v = quadratic_form_sum_omp(g.cov, t, R);
    return {t, v, box_tail(n, c, R) + rounding_slack(v, 8), "gaussian"};
}

HeatTraceValue heat_trace(const SpectralModel& m, double t, const PrecisionConfig& pc) {
    using R = SpectralModel::Rule;
    switch (m.rule) {
        case R::ToeplitzLaplacian: return toeplitz_heat_trace(t, pc);
        case R::ToeplitzBM: {
            auto v = toeplitz_heat_trace(0.5 * t, pc);
            v.t = t;
            v.model = "toeplitz-bm";
            return v;
        }
        case R::HeisenbergLaplacian: return heisenberg_heat_trace(m.N, t, false, pc);
        case R::ReducedHeisenbergLaplacian: return heisenberg_heat_trace(m.N, t, true, pc);
        case R::NCTorusLaplacian: return nc_torus_heat_trace(m.N, m.Tf, t, m.complex_twists, pc);
        case R::SUq2Gauss: return suq2_gauss_trace(m.r, t, pc);
        case R::TorusLaplacian: return torus_heat_trace(m.N, t, pc);
        case R::GeneralGaussian: return general_gaussian_trace(m.gaussian, t, pc);
        case R::Custom: break;
    }
    throw UnsupportedError("heat_trace: no closed form for this model");
}

BoundedValue enumerated_heat_trace(const SpectralModel& m, double t, int radius) {
    check_t(t);
    using R = SpectralModel::Rule;
    double c = 0.0;
    switch (m.rule) {
        case R::TorusLaplacian:
        case R::ReducedHeisenbergLaplacian: c = t; break;
        case R::NCTorusLaplacian:
            if (m.family.Tf != 0) throw UnsupportedError("enumerated_heat_trace: twist coordinates make the sum diverge");
            c = t;
            break;
        default: throw UnsupportedError("enumerated_heat_trace: spectrum not summable for this model");
    }
    Accumulator acc;
    long count = 0;
    for (const Point& mu : enumerate(m.family, radius)) {
        acc += std::exp(t * eigenvalue(m, mu).real());
        ++count;
    }
    double v = acc.result();
    return {v, box_tail(m.dimension(), c, radius) + rounding_slack(v, 8), count};
}

}  // namespace qheat
