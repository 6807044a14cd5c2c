#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "qheat/core.hpp"

namespace qheat {

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
inline const std::pair<std::vector<double>, std::vector<double>>& gl_rule(int n) {
    static thread_local std::vector<std::pair<std::vector<double>, std::vector<double>>> cache(128);
    auto& r = cache.at(n);
    if (!r.first.empty()) return r;
    r.first.resize(n);
    r.second.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        r.first[i] = x;
        r.second[i] = 2 / ((1 - x * x) * dp * dp);
    }
    return r;
}

// Composite 32-point Gauss-Legendre over `panels` equal pieces of [a, b].
template <class F>
auto gauss_legendre(F&& f, double a, double b, int panels) {
    const auto& [x, w] = gl_rule(32);
    using R = decltype(f(a));
    R acc{};
    double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        double lo = a + p * h, mid = lo + 0.5 * h;
        for (size_t i = 0; i < x.size(); ++i) acc += w[i] * f(mid + 0.5 * h * x[i]);
    }
    return acc * (0.5 * h);
}

}  // namespace qheat
