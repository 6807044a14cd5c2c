#include "qheat/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "qheat/special_functions.hpp"

namespace qheat {

namespace {

constexpr int kMoments = 24;  // even binomial orders kept in the far-field expansions

cplx ipow(long n, cplx a) {
    if (n == 0) return 1.0;  // 0^z := 1
    return std::exp(a * std::log(double(n)));
}

// Half-width of the Gaussian window: exp(-u K^2) < 3e-23.
int window(double u) { return static_cast<int>(std::ceil(std::sqrt(52.0 / u))) + 1; }

double window_tail(double u, int K) { return 2.0 * gauss_tail_bound(0, u, K); }

std::vector<double> moments(double u, int K) {
    std::vector<double> mu(kMoments + 1, 0.0);
    for (int i = 0; i <= kMoments; i += 2) {
        Accumulator acc;
        for (int j = -K; j <= K; ++j) acc += std::exp(-u * double(j) * j) * (i == 0 ? 1.0 : std::pow(double(j), i));
        mu[i] = acc.result();
    }
    return mu;
}

std::vector<cplx> binomials(cplx a) {
    std::vector<cplx> b(kMoments + 1);
    b[0] = 1.0;
    for (int i = 1; i <= kMoments; ++i) b[i] = b[i - 1] * (a - double(i - 1)) / double(i);
    return b;
}

// sum_{m>M} m^a zeta(sigma, m), from the Euler-Maclaurin expansion of zeta(sigma, m) in m.
BoundedValue hurwitz_weighted_tail(cplx a, cplx sigma, long M) {
    const double base = double(M + 1);
    BoundedValue out = (1.0 / (sigma - 1.0)) * hurwitz_zeta(sigma - 1.0 - a, base);
    out = out + 0.5 * hurwitz_zeta(sigma - a, base);
    cplx rising = sigma;  // (sigma)_{2k-1}
    double fact = 2.0;    // (2k)!
    cplx last = 0.0;
    for (int k = 1; k <= 6; ++k) {
        if (k > 1) {
            rising *= (sigma + double(2 * k - 3)) * (sigma + double(2 * k - 2));
            fact *= double(2 * k - 1) * double(2 * k);
        }
        BoundedValue h = hurwitz_zeta(sigma + double(2 * k - 1) - a, base);
        cplx term = bernoulli_even(k) / fact * rising * h.value;
        out.value += term;
        out.error_bound += std::abs(bernoulli_even(k) / fact * rising) * h.error_bound;
        last = term;
    }
    out.error_bound += 2.0 * std::abs(last) / double(M) / double(M) + rounding_slack(std::abs(out.value), 32);
    return out;
}

void check_t(double t) {
    if (!(t > 0)) throw DomainError("oracle: t must be positive");
}

}  // namespace

OracleComparison compare(std::string model, std::vector<cplx> z, double t, const BoundedValue& direct,
                         const BoundedValue& closed, double tol) {
    OracleComparison c{std::move(model), std::move(z), t, direct, closed, tol, false};
    c.agree = std::abs(direct.value - closed.value) <= direct.error_bound + closed.error_bound + tol;
    return c;
}

BoundedValue toeplitz_gauged_sum(cplx z1, cplx z2, double t, double delta1, double delta2) {
    check_t(t);
    const cplx a1 = delta1 * z1, a2 = delta2 * z2;
    if (!(a2.real() < -1.0) || a1.real() > 0.0)
        throw DomainError("toeplitz_gauged_sum: need Re(d2 z2) < -1 and Re(d1 z1) <= 0");
    const int K = window(t);
    const long M = std::max<long>(64, 8L * K);

    CAccumulator acc;
    for (long m = 1; m <= M; ++m) {
        CAccumulator inner;
        for (long k = std::max<long>(1 - m, -K); k <= K; ++k) inner += std::exp(-t * double(k) * k) * ipow(m + k, a1);
        acc += ipow(m, a2) * inner.result();
    }
    // m > M: (m+k)^a1 = sum_i binom(a1, i) k^i m^{a1-i}
    const auto mu = moments(t, K);
    const auto b = binomials(a1);
    double err = 0.0;
    cplx last = 0.0;
    for (int i = 0; i <= kMoments; i += 2) {
        if (b[i] == 0.0) {
            last = 0.0;  // series terminated
            break;
        }
        BoundedValue h = hurwitz_zeta(double(i) - a1 - a2, double(M + 1));
        last = b[i] * mu[i] * h.value;
        acc += last;
        err += std::abs(b[i] * mu[i]) * h.error_bound;
    }
    err += 2.0 * std::abs(last);
    err += window_tail(t, K) * riemann_zeta(-a2.real()).real();
    cplx v = acc.result();
    return {v, err + rounding_slack(std::abs(v), 64), M * (2L * K + 1)};
}

BoundedValue toeplitz_continued_form(cplx z2, double t, double delta2) {
    check_t(t);
    const cplx a = delta2 * z2;
    if (std::abs(a + 1.0) < 1e-12) throw DomainError("toeplitz_continued_form: zeta pole at z2 = -1");
    const BoundedValue zeta = riemann_zeta(-a);
    const int K = window(t) + 4;
    CAccumulator acc;
    Accumulator s0;
    cplx partial = 0.0;  // sum_{m<=k} m^a
    double partial_abs = 0.0;
    for (int k = 0; k <= K; ++k) {
        if (k > 0) {
            partial += ipow(k, a);
            partial_abs += std::abs(ipow(k, a));
        }
        const double g = std::exp(-t * double(k) * k);
        acc += g * (zeta.value - partial);
        if (k > 0) s0 += g;
    }
    acc += zeta.value * s0.result();
    const double p = std::max(a.real(), 0.0) + 1.0;
    const double tail = (2.0 * std::abs(zeta.value) + 1.0) * window_tail(t, K) + gauss_tail_bound(0, t, K) * std::pow(double(K) + 1.0, p) * 4.0;
    cplx v = acc.result();
    double err = zeta.error_bound * (1.0 + 2.0 * s0.result()) + tail + rounding_slack(std::abs(v) + partial_abs, 64);
    return {v, err, K + 1};
}

namespace {

// Pieces shared by both orders of summation for the SU_q(2) triple series. W(l) is the
// Gaussian-window sum over k at fixed l; it is even in l.
struct SUq2Setup {
    cplx z1, z2, z3, c;
    double u;
    int K;
    std::vector<double> mu;
    std::vector<cplx> b;
    double win_err;

    SUq2Setup(const std::array<cplx, 3>& z, double r, double t) {
        check_t(t);
        if (!(r > 0)) throw DomainError("suq2 oracle: r must be positive");
        z1 = z[0];
        z2 = z[1];
        z3 = z[2];
        c = z1 + z3;
        if (z1.real() > 0.0 || z3.real() > 0.0 || !(c.real() < -1.0))
            throw DomainError("suq2 oracle: need Re z1, Re z3 <= 0 and Re(z1 + z3) < -1");
        u = r * t;
        K = window(u);
        mu = moments(u, K);
        b = binomials(z1);
        win_err = window_tail(u, K);
    }

    cplx W(long l) const {
        CAccumulator acc;
        for (long j = -K; j <= K; ++j) acc += std::exp(-u * double(j) * j) * ipow(std::labs(j - l), z1);
        return acc.result();
    }

    // sum_{l>=L} l^{z3} W(l) for L > 4K, via the far-field expansion of W.
    BoundedValue far_tail(long L) const {
        BoundedValue out{0.0, 0.0, 0};
        cplx last = 0.0;
        for (int i = 0; i <= kMoments; i += 2) {
            if (b[i] == 0.0) {
                last = 0.0;
                break;
            }
            BoundedValue h = hurwitz_zeta(double(i) - c, double(L));
            last = b[i] * mu[i] * h.value;
            out.value += last;
            out.error_bound += std::abs(b[i] * mu[i]) * h.error_bound;
        }
        out.error_bound += 2.0 * std::abs(last);
        return out;
    }

    // sum_i binom(z1,i) mu_i sum_{m>M} m^{a} zeta(sigma_i, m) with the given exponent maps.
    template <class F>
    BoundedValue far_double_tail(long M, F exponents) const {
        BoundedValue out{0.0, 0.0, 0};
        cplx last = 0.0;
        for (int i = 0; i <= kMoments; i += 2) {
            if (b[i] == 0.0) {
                last = 0.0;
                break;
            }
            auto [a, sigma] = exponents(i);
            BoundedValue h = hurwitz_weighted_tail(a, sigma, M);
            last = b[i] * mu[i] * h.value;
            out.value += last;
            out.error_bound += std::abs(b[i] * mu[i]) * h.error_bound;
        }
        out.error_bound += 2.0 * std::abs(last);
        return out;
    }

    // Every |k|^{z1} is at most 1, so dropping |j| > K costs at most win_err per (m, l) pair.
    double window_error() const {
        double sl = z3.real() < -1.0 ? riemann_zeta(-z3.real()).real() : 0.0;
        double sm = z2.real() < -1.0 ? riemann_zeta(-z2.real()).real() : 1.0;
        // per m: sum over l of |l|^{Re z3}; bounded by 1 + 2 zeta(-Re z3) when that converges,
        // otherwise by the number of l below the Gaussian cutoff.
        double per_m = (sl > 0.0) ? 1.0 + 2.0 * sl : 1.0;
        return win_err * per_m * std::max(sm, 1.0) * 4.0;
    }
};

}  // namespace

BoundedValue suq2_gauged_sum(const std::array<cplx, 3>& z, double r, double t) {
    if (!(z[1].real() < -1.0)) throw DomainError("suq2_gauged_sum: need Re z2 < -1");
    SUq2Setup S(z, r, t);
    const long L = std::max<long>(256, 8L * S.K);
    const long M = L;

    // Q(m) = sum_{1<=l<m} l^{z3} W(l), accumulated as m runs; P+ = W(0) + Q(inf).
    std::vector<cplx> w(L + 1);
    for (long l = 0; l <= L; ++l) w[l] = S.W(l);
    CAccumulator q_inf;
    for (long l = 1; l <= L; ++l) q_inf += ipow(l, S.z3) * w[l];
    BoundedValue far = S.far_tail(L + 1);
    const cplx Qinf = q_inf.result() + far.value;
    const cplx Pplus = w[0] + Qinf;

    CAccumulator acc;
    CAccumulator q;
    for (long m = 1; m <= M; ++m) {
        if (m > 1) q += ipow(m - 1, S.z3) * w[m - 1];
        acc += ipow(m, S.z2) * (Pplus + q.result());
    }
    BoundedValue hz = hurwitz_zeta(-S.z2, double(M + 1));
    acc += (Pplus + Qinf) * hz.value;
    // minus sum_{m>M} m^{z2} sum_{l>=m} l^{z3} W(l)
    BoundedValue dt = S.far_double_tail(M, [&](int i) { return std::pair<cplx, cplx>{S.z2, double(i) - S.c}; });
    acc += -dt.value;

    cplx v = acc.result();
    double err = dt.error_bound + std::abs(hz.value) * 2.0 * far.error_bound + std::abs(Pplus + Qinf) * hz.error_bound +
                 2.0 * far.error_bound * riemann_zeta(-S.z2.real()).real() + S.window_error() +
                 rounding_slack(std::abs(v), 256);
    return {v, err, M * L};
}

BoundedValue suq2_continued_expression(const std::array<cplx, 3>& z, double r, double t) {
    if (std::abs(z[1] + 1.0) < 1e-12) throw DomainError("suq2_continued_expression: zeta pole at z2 = -1");
    SUq2Setup S(z, r, t);
    if (!(S.c.real() + std::max(S.z2.real() + 1.0, 0.0) < -1.0))
        throw DomainError("suq2_continued_expression: l-series diverges for these exponents");
    // a different cut from the direct route on purpose
    const long L = std::max<long>(181, 6L * S.K + 37);
    const BoundedValue zeta = riemann_zeta(-S.z2);

    CAccumulator q;   // sum_l l^{z3} W(l)
    CAccumulator qh;  // sum_l l^{z3} W(l) H_l(z2)
    cplx H = 0.0;
    for (long l = 1; l <= L; ++l) {
        H += ipow(l, S.z2);
        cplx wl = ipow(l, S.z3) * S.W(l);
        q += wl;
        qh += wl * H;
    }
    BoundedValue far = S.far_tail(L + 1);
    const cplx Qinf = q.result() + far.value;
    // l > L: H_l = zeta(-z2) - zeta(-z2, l+1)
    BoundedValue dt = S.far_double_tail(L, [&](int i) { return std::pair<cplx, cplx>{S.c - double(i), -S.z2}; });
    // sum_{l>L} l^{c-i} zeta(-z2, l+1) = sum_{l>L} l^{c-i} zeta(-z2, l) - zeta(-z2 - c + i, L+1)
    BoundedValue corr{0.0, 0.0, 0};
    for (int i = 0; i <= kMoments; i += 2) {
        if (S.b[i] == 0.0) break;
        BoundedValue h = hurwitz_zeta(-S.z2 - S.c + double(i), double(L + 1));
        corr.value += S.b[i] * S.mu[i] * h.value;
        corr.error_bound += std::abs(S.b[i] * S.mu[i]) * h.error_bound;
    }
    const cplx tailQH = zeta.value * far.value - (dt.value - corr.value);

    const cplx v = zeta.value * (S.W(0) + 2.0 * Qinf) - (qh.result() + tailQH);
    double err = zeta.error_bound * std::abs(S.W(0) + 2.0 * Qinf) + 3.0 * std::abs(zeta.value) * far.error_bound +
                 dt.error_bound + corr.error_bound + S.window_error() + rounding_slack(std::abs(v), 256);
    return {v, err, L * (2L * S.K + 1)};
}

cplx suq2_box_sum(const std::array<cplx, 3>& z, double r, double t, int R) {
    const double u = r * t;
    CAccumulator acc;
    for (int m = 1; m <= R; ++m)
        for (int l = std::max(1 - m, -R); l <= R; ++l)
            for (int k = -R; k <= R; ++k)
                acc += std::exp(-u * double(k + l) * (k + l)) * ipow(std::abs(k), z[0]) * ipow(m, z[1]) * ipow(std::abs(l), z[2]);
    return acc.result();
}

SUq2Reduction suq2_reduction(double t, double r) {
    check_t(t);
    if (!(r > 0)) throw DomainError("suq2_reduction: r must be positive");
    const double u = r * t;
    const int R = window(u) + 2;
    Accumulator pair, weighted;
    for (int k = 1; k <= R; ++k)
        for (int l = 1; l <= R; ++l) {
            double g = std::exp(-u * double(k + l) * (k + l));
            pair += g;
            weighted += l * g;
        }
    // pairs with k + l > R: at most sum_{n>R} n^2 e^{-u n^2}
    const double cut = gauss_tail_bound(2, u, R);
    BoundedValue s0 = gauss_sum(0, u), s1 = gauss_sum(1, u), s2 = gauss_sum(2, u);
    SUq2Reduction out;
    out.pair_sum = {pair.result(), cut + rounding_slack(pair.result(), 8), long(R) * R};
    out.weighted_sum = {weighted.result(), cut + rounding_slack(weighted.result(), 8), long(R) * R};
    out.pair_sum_rhs = s1 - s0;
    out.weighted_rhs = 0.5 * (s2 - s1);
    BoundedValue head = BoundedValue{1.0 / 12.0, 0.0, 0} + (1.0 / 12.0) * s0 + (19.0 / 12.0) * s1 - 0.5 * s2;
    out.intermediate = head - out.weighted_sum - out.pair_sum;
    out.closed_form = head - out.weighted_rhs - out.pair_sum_rhs;
    out.closed_form.error_bound += rounding_slack(std::abs(out.closed_form.value) + std::abs(s2.value), 16);
    return out;
}

BoundedValue suq2_continued_form(double t, double r) { return suq2_reduction(t, r).closed_form; }

}  // namespace qheat
