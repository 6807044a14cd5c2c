#include "qheat/lattice_zeta.hpp"

#include <cmath>
#include <numeric>

#include "qheat/special_functions.hpp"

namespace qheat {

namespace {

constexpr int kSeriesCut2 = 48;  // keep t^p for 2p <= 48

using Series = std::map<int, double>;

Series multiply(const Series& a, const Series& b, int cut2) {
    Series out;
    for (auto [ka, ca] : a)
        for (auto [kb, cb] : b)
            if (ka + kb <= cut2) out[ka + kb] += ca * cb;
    return out;
}

// Small-t expansion of sum_k k^e exp(-pi t k^2) over one axis.
Series axis_series(Axis ax, int e, int terms, bool& exact) {
    Series s;
    const double lead = std::tgamma((e + 1) / 2.0) * std::pow(pi, -(e + 1) / 2.0);
    if (ax == Axis::Full) {
        s[-(e + 1)] = lead;  // e even here; Poisson gives no further powers
        return s;
    }
    s[-(e + 1)] = 0.5 * lead;
    if (e == 0) {
        s[0] = 0.5;  // k = 0 term plus zeta(0)
    } else if (e % 2 == 1) {
        exact = false;
        double f = 1.0;  // (-pi)^j / j!
        for (int j = 0; j < terms; ++j) {
            if (j > 0) f *= -pi / j;
            s[2 * j] += riemann_zeta(double(-e - 2 * j)).real() * f;
        }
    }
    return s;
}

std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size(), 0.0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0) continue;
        for (size_t j = 0; i + j < a.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

std::vector<double> axis_shells(Axis ax, int e, int nmax) {
    std::vector<double> c(nmax + 1, 0.0);
    int K = static_cast<int>(std::floor(std::sqrt(double(nmax))));
    for (int k = (ax == Axis::Full ? -K : 0); k <= K; ++k) c[k * k] += (e == 0 ? 1.0 : std::pow(double(k), e));
    return c;
}

}  // namespace

LatticeZeta::LatticeZeta(std::vector<Axis> axes, std::vector<int> e, double t0)
    : axes_(std::move(axes)), e_(std::move(e)), t0_(t0) {
    if (axes_.size() != e_.size() || axes_.empty()) throw DomainError("LatticeZeta: axes and exponents must match");
    for (size_t i = 0; i < axes_.size(); ++i) {
        if (e_[i] < 0) throw DomainError("LatticeZeta: negative exponent");
        if (axes_[i] == Axis::Full && e_[i] % 2 == 1) zero_ = true;
    }
    if (zero_) return;

    const int nmax = static_cast<int>(std::ceil(46.0 / (pi * t0_)));
    shells_ = axis_shells(axes_[0], e_[0], nmax);
    for (size_t i = 1; i < axes_.size(); ++i) shells_ = convolve(shells_, axis_shells(axes_[i], e_[i], nmax));
    shells_[0] = 0.0;

    const int half_weight = static_cast<int>(axes_.size()) + weight();
    const int terms = kSeriesCut2 / 2 + half_weight + 4;
    const int cut2 = kSeriesCut2 + 2;
    bool exact = true;
    Series prod{{0, 1.0}};
    for (size_t i = 0; i < axes_.size(); ++i) prod = multiply(prod, axis_series(axes_[i], e_[i], terms, exact), cut2 + half_weight + 2);
    exact_series_ = exact;
    bool origin = std::all_of(e_.begin(), e_.end(), [](int v) { return v == 0; });
    if (origin) prod[0] -= 1.0;
    for (auto [k, c] : prod) {
        if (k <= kSeriesCut2) {
            if (c != 0.0) series_[k] = c;
        } else if (k <= cut2 && std::abs(c) > neglected_) {
            neglected_ = std::abs(c);
            neglected_power2_ = k;
        }
    }
}

int LatticeZeta::weight() const { return std::accumulate(e_.begin(), e_.end(), 0); }

std::vector<PoleInfo> LatticeZeta::poles(double re_min) const {
    std::vector<PoleInfo> out;
    if (zero_) return out;
    for (auto it = series_.begin(); it != series_.end(); ++it) {
        double p = it->first / 2.0;
        double s = -2.0 * p;
        if (s <= re_min) continue;
        cplx rg = rgamma(-p);
        if (rg == 0.0) continue;
        out.push_back({s, 2.0 * std::pow(pi, -p) * it->second * rg});
    }
    return out;
}

BoundedValue LatticeZeta::eval(cplx s, const PrecisionConfig& pc) const {
    if (zero_) return {0.0, 0.0, 0};
    const cplx h = 0.5 * s;
    const cplx rg = rgamma(h);
    if (rg == 0.0) {
        // s = -2k: only the t^k term survives, c_k (-1)^k k! pi^{-k}
        int k = static_cast<int>(std::lround(-h.real()));
        if (2 * k > kSeriesCut2) throw UnsupportedError("LatticeZeta: nonpositive even integer beyond series cut");
        auto it = series_.find(2 * k);
        double c = it == series_.end() ? 0.0 : it->second;
        double v = c * (k % 2 ? -1.0 : 1.0) * std::tgamma(k + 1.0) * std::pow(pi, -double(k));
        return {v, rounding_slack(std::abs(v), 8), 0};
    }
    for (auto [k2, c] : series_) {
        if (h == cplx(-k2 / 2.0, 0.0)) {
            cplx res = 2.0 * std::pow(pi, -k2 / 2.0) * c * rg;
            throw PoleError("lattice zeta pole", s, res);
        }
    }

    CAccumulator lam;
    double mag = 0.0;
    long terms = 0;
    double err = 0.0;
    for (size_t n = 1; n < shells_.size(); ++n) {
        if (shells_[n] == 0.0) continue;
        BoundedValue g = upper_incomplete_gamma(h, pi * t0_ * n, pc);
        cplx f = shells_[n] * std::exp(-h * std::log(pi * n));
        cplx term = f * g.value;
        lam += term;
        mag += std::abs(term);
        err += std::abs(f) * g.error_bound;
        ++terms;
    }
    // shells beyond nmax: |W(n)| <= 2 (2 sqrt n + 1)^{d-1} n^{|e|/2}
    {
        const double sig = h.real();
        const int d = dimension();
        for (size_t n = shells_.size(); n < shells_.size() + 400; ++n) {
            double w = 2.0 * std::pow(2.0 * std::sqrt(double(n)) + 1.0, d - 1) * std::pow(double(n), weight() / 2.0);
            err += w * std::pow(pi * n, -sig) * incomplete_gamma_bound(sig, pi * t0_ * n);
        }
    }
    const double lt0 = std::log(t0_);
    for (auto [k2, c] : series_) {
        cplx a = h + k2 / 2.0;
        cplx term = c * std::exp(a * lt0) / a;
        lam += term;
        mag += std::abs(term);
    }
    if (!exact_series_ && neglected_ > 0.0) {
        cplx a = h + neglected_power2_ / 2.0;
        err += 4.0 * neglected_ * std::exp(a.real() * lt0) / std::abs(a);
    }
    const cplx pref = std::exp(h * std::log(pi)) * rg;
    cplx v = pref * lam.result();
    double bound = std::abs(pref) * (err + rounding_slack(mag, 32));
    return {v, bound, terms + static_cast<long>(series_.size())};
}

std::vector<double> shell_counts(int d, int nmax) {
    std::vector<double> c = axis_shells(Axis::Full, 0, nmax);
    std::vector<double> one = c;
    for (int i = 1; i < d; ++i) c = convolve(c, one);
    return c;
}

namespace {

// G(s) = sum_n r_d(n) [(pi n)^{-s/2} Gamma(s/2, pi n) + (pi n)^{-(d-s)/2} Gamma((d-s)/2, pi n)]
BoundedValue epstein_theta_part(int d, cplx s, const PrecisionConfig& pc) {
    const int nmax = 24 + static_cast<int>(std::ceil(std::abs(s) + d));
    std::vector<double> r = shell_counts(d, nmax);
    CAccumulator acc;
    double mag = 0.0, err = 0.0;
    const cplx a1 = 0.5 * s, a2 = 0.5 * (double(d) - s);
    for (int n = 1; n <= nmax; ++n) {
        if (r[n] == 0.0) continue;
        double x = pi * n;
        BoundedValue g1 = upper_incomplete_gamma(a1, x, pc);
        BoundedValue g2 = upper_incomplete_gamma(a2, x, pc);
        cplx f1 = std::exp(-a1 * std::log(x)), f2 = std::exp(-a2 * std::log(x));
        cplx term = r[n] * (f1 * g1.value + f2 * g2.value);
        acc += term;
        mag += std::abs(term);
        err += r[n] * (std::abs(f1) * g1.error_bound + std::abs(f2) * g2.error_bound);
    }
    for (int n = nmax + 1; n <= nmax + 200; ++n) {
        double w = 2.0 * std::pow(2.0 * std::sqrt(double(n)) + 1.0, d - 1);
        double x = pi * n;
        err += w * (std::pow(x, -a1.real()) * incomplete_gamma_bound(a1.real(), x) +
                    std::pow(x, -a2.real()) * incomplete_gamma_bound(a2.real(), x));
    }
    return {acc.result(), err + rounding_slack(mag, 16), nmax};
}

}  // namespace

BoundedValue epstein_zeta(int d, cplx s, const PrecisionConfig& pc) {
    if (d < 1) throw DomainError("epstein_zeta: d must be positive");
    const double res = 2.0 * std::pow(pi, d / 2.0) / std::tgamma(d / 2.0);
    if (std::abs(s - double(d)) < 1e-3)
        throw PoleError("epstein_zeta: at or near the pole s=d; use epstein_laurent_at_pole", double(d), res);
    // Z_d(s) = pi^{s/2} [ -1/Gamma(1+s/2) + (2/(s-d) + G(s)) / Gamma(s/2) ]
    BoundedValue G = epstein_theta_part(d, s, pc);
    const cplx ps = std::exp(0.5 * s * std::log(pi));
    const cplx rg = rgamma(0.5 * s);
    cplx v = ps * (-rgamma(1.0 + 0.5 * s) + rg * (2.0 / (s - double(d)) + G.value));
    double err = std::abs(ps * rg) * G.error_bound + rounding_slack(std::abs(v) + std::abs(ps), 32);
    return {v, err, G.terms_used};
}

LaurentData epstein_laurent_at_pole(int d) {
    if (d < 1) throw DomainError("epstein_laurent_at_pole: d must be positive");
    const double A = std::pow(pi, d / 2.0) / std::tgamma(d / 2.0);
    BoundedValue G = epstein_theta_part(d, double(d), {});
    cplx Gd = -2.0 / d + G.value;
    cplx fp = A * ((std::log(pi) - digamma(d / 2.0)) + Gd);
    return {double(d), 1, 2.0 * A, fp};
}

BoundedValue weighted_epstein_zeta(int d, const std::vector<int>& a, cplx s, const PrecisionConfig& pc) {
    if (static_cast<int>(a.size()) != d) throw DomainError("weighted_epstein_zeta: exponent vector length must equal d");
    int w = 0;
    for (int v : a) {
        if (v < 0 || v % 2 != 0) throw DomainError("weighted_epstein_zeta: exponents must be even and nonnegative");
        w += v;
    }
    const double pole = d + w;
    if (s == cplx(pole, 0.0)) {
        double c = 1.0;
        for (int v : a) c *= std::tgamma((v + 1) / 2.0) * std::pow(pi, -(v + 1) / 2.0);
        // residue 2 pi^{pole/2} c / Gamma(pole/2)
        throw PoleError("weighted_epstein_zeta: pole", pole, 2.0 * std::pow(pi, pole / 2.0) * c / std::tgamma(pole / 2.0));
    }
    LatticeZeta z(std::vector<Axis>(d, Axis::Full), a);
    return z.eval(s, pc);
}

BoundedValue quadrant_zeta(cplx s, const PrecisionConfig& pc) {
    if (s == cplx(2.0, 0.0)) throw PoleError("quadrant_zeta: pole at s=2", 2.0, pi / 2.0);
    if (s == cplx(1.0, 0.0)) throw PoleError("quadrant_zeta: axis pole at s=1", 1.0, 1.0);
    BoundedValue z2 = epstein_zeta(2, s, pc);
    BoundedValue z1 = riemann_zeta(s, pc);
    return 0.25 * z2 + z1;
}

BoundedValue direct_lattice_sum(const std::vector<Axis>& axes, const std::vector<int>& e, cplx s, double X) {
    if (X <= 0) X = axes.size() <= 2 ? 1e4 : (axes.size() == 3 ? 2500.0 : 400.0);
    auto at = [&](double x) { return tapered_power_sum_omp(axes, e, s, x) + tapered_tail(axes, e, s, x); };
    cplx v1 = at(X);
    cplx v2 = at(0.6 * X);
    return {v1, std::abs(v1 - v2) + rounding_slack(std::abs(v1), 64), 0};
}

}  // namespace qheat
