#include "qheat/kernels.hpp"

#include <cmath>

#include "qheat/quadrature.hpp"
#include "qheat/special_functions.hpp"

namespace qheat {

double taper(double y) {
    if (y <= 1.0) return 1.0;
    if (y >= 2.0) return 0.0;
    auto psi = [](double x) { return x > 0 ? std::exp(-1.0 / x) : 0.0; };
    double a = psi(2.0 - y), b = psi(y - 1.0);
    return a / (a + b);
}

namespace {

struct Box {
    std::vector<int> lo, hi;
};

Box box_for(const std::vector<Axis>& axes, int R) {
    Box b;
    for (Axis a : axes) {
        b.lo.push_back(a == Axis::Full ? -R : 0);
        b.hi.push_back(R);
    }
    return b;
}

double monomial(const std::vector<int>& mu, const std::vector<int>& e) {
    double w = 1.0;
    for (size_t i = 0; i < mu.size(); ++i)
        if (e[i] != 0) w *= std::pow(double(mu[i]), e[i]);
    return w;
}

// Partial sum with the first coordinate fixed to i0.
cplx tapered_slice(const Box& box, const std::vector<int>& e, cplx s, double X, int i0) {
    const size_t d = box.lo.size();
    std::vector<int> mu(d);
    mu[0] = i0;
    for (size_t i = 1; i < d; ++i) mu[i] = box.lo[i];
    CAccumulator acc;
    const double cut = 2.0 * X;
    while (true) {
        long n2 = 0;
        for (int v : mu) n2 += long(v) * v;
        if (n2 > 0 && double(n2) < cut) {
            double w = monomial(mu, e) * taper(double(n2) / X);
            if (w != 0.0) acc += w * std::exp(-0.5 * s * std::log(double(n2)));
        }
        size_t k = 1;
        for (; k < d; ++k) {
            if (++mu[k] <= box.hi[k]) break;
            mu[k] = box.lo[k];
        }
        if (k >= d) break;
    }
    return acc.result();
}

cplx reduce_in_order(const std::vector<cplx>& parts) {
    CAccumulator acc;
    for (const cplx& p : parts) acc += p;
    return acc.result();
}

}  // namespace

cplx tapered_power_sum_serial(const std::vector<Axis>& axes, const std::vector<int>& e, cplx s, double X) {
    int R = static_cast<int>(std::floor(std::sqrt(2.0 * X)));
    Box box = box_for(axes, R);
    std::vector<cplx> parts(box.hi[0] - box.lo[0] + 1);
    for (int i = box.lo[0]; i <= box.hi[0]; ++i) parts[i - box.lo[0]] = tapered_slice(box, e, s, X, i);
    return reduce_in_order(parts);
}

cplx tapered_power_sum_omp(const std::vector<Axis>& axes, const std::vector<int>& e, cplx s, double X) {
    int R = static_cast<int>(std::floor(std::sqrt(2.0 * X)));
    Box box = box_for(axes, R);
    const int lo = box.lo[0], n = box.hi[0] - box.lo[0] + 1;
    std::vector<cplx> parts(n);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) parts[i] = tapered_slice(box, e, s, X, lo + i);
    return reduce_in_order(parts);
}

cplx tapered_tail(const std::vector<Axis>& axes, const std::vector<int>& e, cplx s, double X) {
    std::vector<int> half;
    int full = 0, full_e = 0;
    double full_gamma = 1.0;
    for (size_t i = 0; i < axes.size(); ++i) {
        if (e[i] % 2 != 0) throw UnsupportedError("tapered_tail: odd exponent");
        if (axes[i] == Axis::Full) {
            ++full;
            full_e += e[i];
            full_gamma *= std::tgamma((e[i] + 1) / 2.0);
        } else {
            half.push_back(static_cast<int>(i));
        }
    }
    // Each half-line coordinate acts as (1/2) integral over R plus (1/2) evaluation at 0;
    // odd derivatives of the even integrand vanish at 0, so no further boundary terms.
    CAccumulator acc;
    const int h = static_cast<int>(half.size());
    for (int mask = 0; mask < (1 << h); ++mask) {
        int dim = full, esum = full_e;
        double gprod = full_gamma;
        bool zero = false;
        for (int j = 0; j < h; ++j) {
            int ax = half[j];
            if (mask & (1 << j)) {
                ++dim;
                esum += e[ax];
                gprod *= std::tgamma((e[ax] + 1) / 2.0);
            } else if (e[ax] != 0) {
                zero = true;
            }
        }
        if (zero || dim == 0) continue;
        const double kappa = 0.5 * (esum + dim);
        const cplx p = kappa - 0.5 * s;  // integrand x^{p-1}
        if (p.real() >= 0) throw DomainError("tapered_tail: divergent continuum tail");
        // integral_1^2 y^{p-1} (1 - taper(y)) dy + 2^p / (-p)
        cplx inner = gauss_legendre([&](double y) { return cplx(std::pow(y, p - 1.0) * (1.0 - taper(y))); }, 1.0, 2.0, 16);
        inner += std::pow(2.0, p) / (-p);
        cplx ang = gprod / std::tgamma(kappa);
        acc += std::pow(0.5, h) * ang * std::pow(X, p) * inner;
    }
    return acc.result();
}

namespace {

double quadratic_slice(const Eigen::MatrixXd& C, double t, int R, int i0) {
    const int n = static_cast<int>(C.rows());
    Eigen::VectorXd mu = Eigen::VectorXd::Constant(n, -R);
    mu[0] = i0;
    Accumulator acc;
    while (true) {
        acc += std::exp(-0.5 * t * mu.dot(C * mu));
        int k = 1;
        for (; k < n; ++k) {
            if (++mu[k] <= R) break;
            mu[k] = -R;
        }
        if (k >= n) break;
    }
    return acc.result();
}

}  // namespace

double quadratic_form_sum_serial(const Eigen::MatrixXd& C, double t, int R) {
    std::vector<double> parts(2 * R + 1);
    for (int i = -R; i <= R; ++i) parts[i + R] = quadratic_slice(C, t, R, i);
    Accumulator acc;
    for (double p : parts) acc += p;
    return acc.result();
}

double quadratic_form_sum_omp(const Eigen::MatrixXd& C, double t, int R) {
    std::vector<double> parts(2 * R + 1);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < 2 * R + 1; ++i) parts[i] = quadratic_slice(C, t, R, i - R);
    Accumulator acc;
    for (double p : parts) acc += p;
    return acc.result();
}

}  // namespace qheat
