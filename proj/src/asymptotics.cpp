#include "qheat/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <Eigen/Dense>

#include <omp.h>

namespace qheat {

namespace {

std::vector<double> sample(const TraceFn& trace, const std::vector<double>& grid) {
    std::vector<double> v(grid.size());
    // traces are pure; grid points are independent
    std::vector<std::string> failures(grid.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < long(grid.size()); ++i) {
        try {
            v[i] = trace(grid[i]).value;
        } catch (const std::exception& e) {
            failures[i] = e.what();
        }
    }
    for (const auto& f : failures)
        if (!f.empty()) throw ConvergenceError("asymptotics: trace failed on grid: " + f);
    return v;
}

void check_grid(const std::vector<double>& grid, size_t need) {
    if (grid.size() < need) throw DomainError("asymptotics: grid too short");
    for (size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0)) throw DomainError("asymptotics: grid entries must be positive");
        if (i > 0 && !(grid[i] < grid[i - 1])) throw DomainError("asymptotics: grid must be decreasing");
    }
}

// Neville extrapolation to h = 0; err is the last correction.
double extrapolate(const std::vector<double>& h, const std::vector<double>& y, double& err) {
    const size_t n = h.size();
    std::vector<double> P(y);
    err = 0.0;
    for (size_t m = 1; m < n; ++m) {
        for (size_t i = 0; i + m < n; ++i) {
            double next = (h[i + m] * P[i] - h[i] * P[i + 1]) / (h[i + m] - h[i]);
            if (i == 0 && m == n - 1) err = std::abs(next - P[0]);
            P[i] = next;
        }
    }
    if (n == 1) err = std::abs(y[0]);
    return P[0];
}

// The smallest n grid points, mapped to h = sqrt(t).
constexpr size_t kNeville = 7;
// degree of the sqrt(t) polynomial absorbing corrections in the log fit
constexpr int kLogDegree = 4;

struct Tail {
    std::vector<double> h, g;
};

Tail tail_of(const std::vector<double>& grid, const std::vector<double>& g) {
    const size_t n = std::min(kNeville, grid.size());
    Tail out;
    for (size_t i = grid.size() - n; i < grid.size(); ++i) {
        out.h.push_back(std::sqrt(grid[i]));
        out.g.push_back(g[i]);
    }
    return out;
}

}  // namespace

std::vector<double> default_grid() {
    std::vector<double> g;
    for (int j = 0; j <= 12; ++j) g.push_back(0.1 * std::ldexp(1.0, -j));
    return g;
}

double detect_pole_order(const TraceFn& trace, const std::vector<double>& grid, double threshold, double* residual) {
    check_grid(grid, kLogDegree + 4);
    const double decades2 = 2.0 * std::log(10.0) - 1e-9;
    if (!(std::log(grid.front() / grid.back()) >= decades2))
        throw DomainError("detect_pole_order: grid must span at least two decades");
    auto v = sample(trace, grid);
    for (double x : v)
        if (!(std::abs(x) > 0)) throw ConvergenceError("detect_pole_order: trace vanishes on the grid");

    // Fit; while the residual is too large, drop the largest t (outside the asymptotic
    // regime) as long as two decades and enough points remain.
    size_t first = 0;
    double res = 0.0, slope = 0.0;
    for (;;) {
        const long n = long(grid.size() - first);
        Eigen::MatrixXd X(n, 2 + kLogDegree);
        Eigen::VectorXd y(n);
        for (long i = 0; i < n; ++i) {
            const double t = grid[first + i];
            X(i, 0) = std::log(t);
            for (int j = 0; j <= kLogDegree; ++j) X(i, 1 + j) = std::pow(t, 0.5 * j);
            y(i) = std::log(std::abs(v[first + i]));
        }
        Eigen::VectorXd beta = X.colPivHouseholderQr().solve(y);
        res = std::sqrt((X * beta - y).squaredNorm() / double(n));
        slope = beta(0);
        const bool can_drop = grid.size() - first - 1 >= size_t(kLogDegree + 4) &&
                              std::log(grid[first + 1] / grid.back()) >= decades2;
        if (res <= threshold || !can_drop) break;
        ++first;
    }
    if (residual) *residual = res;
    if (res > threshold) throw ConvergenceError("detect_pole_order: fit residual " + std::to_string(res) + " above threshold");
    return -slope;
}

double leading_coefficient(const TraceFn& trace, double p, const std::vector<double>& grid, double* error) {
    check_grid(grid, 3);
    auto v = sample(trace, grid);
    std::vector<double> g(v.size());
    for (size_t i = 0; i < v.size(); ++i) g[i] = std::pow(4.0 * pi * grid[i], p) * v[i];
    Tail tl = tail_of(grid, g);
    double err = 0.0;
    double a0 = extrapolate(tl.h, tl.g, err);
    if (error) *error = err;
    if (!std::isfinite(a0) || err > 1e-2 * std::max(1.0, std::abs(a0)))
        throw ConvergenceError("leading_coefficient: extrapolation does not settle (last correction " + std::to_string(err) + ")");
    return a0;
}

AsymptoticsResult heat_coefficients(const TraceFn& trace, double p, int K, const std::vector<double>& grid, bool pure_theta) {
    check_grid(grid, 3);
    if (K < 0) throw DomainError("heat_coefficients: K must be nonnegative");
    auto v = sample(trace, grid);
    std::vector<double> g(v.size());
    for (size_t i = 0; i < v.size(); ++i) g[i] = std::pow(4.0 * pi * grid[i], p) * v[i];

    AsymptoticsResult out;
    out.pole_order = p;
    out.grid = grid;
    std::vector<double> cur = g;
    for (int k = 0; k <= K; ++k) {
        double err = 0.0;
        double a = 0.0;
        if (pure_theta && k >= 1) {
            // remainder is O(exp(-pi^2/t)); report what is left on the grid as the bound
            for (size_t i = 0; i < grid.size(); ++i)
                err = std::max(err, std::abs(g[i] - out.coefficients[0]) / std::pow(grid[i], 0.5 * k));
        } else {
            Tail tl = tail_of(grid, cur);
            a = extrapolate(tl.h, tl.g, err);
            if (!std::isfinite(a) || err > 1e-2 * std::max(1.0, std::abs(a)))
                throw ConvergenceError("heat_coefficients: noise amplification at k = " + std::to_string(k));
        }
        out.coefficients.push_back(a);
        out.errors.push_back(err);
        for (size_t i = 0; i < cur.size(); ++i) cur[i] = (cur[i] - a) / std::sqrt(grid[i]);
    }
    out.leading_coefficient = out.coefficients[0];
    out.leading_error = out.errors[0];
    // largest misfit of the truncated expansion on the grid, relative to A_0
    double res = 0.0;
    for (size_t i = 0; i < grid.size(); ++i) {
        double model = 0.0;
        for (int k = 0; k <= K; ++k) model += out.coefficients[k] * std::pow(grid[i], 0.5 * k);
        res = std::max(res, std::abs(g[i] - model) / std::max(1.0, std::abs(out.coefficients[0])));
    }
    out.fit_residual = res;
    out.confident = out.leading_error <= 1e-6 * std::max(1.0, std::abs(out.leading_coefficient));
    return out;
}

TraceFn trace_of(const SpectralModel& model, const PrecisionConfig& pc) {
    return [model, pc](double t) { return heat_trace(model, t, pc); };
}

bool is_pure_theta(const SpectralModel& model) {
    using R = SpectralModel::Rule;
    switch (model.rule) {
        case R::TorusLaplacian:
        case R::HeisenbergLaplacian:
        case R::ReducedHeisenbergLaplacian:
        case R::NCTorusLaplacian: return true;
        default: return false;
    }
}

}  // namespace qheat
