#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "qheat/quadrature.hpp"
#include "qheat/special_functions.hpp"

using namespace qheat;
using doctest::Approx;

namespace {

// plain sum, stops once terms are far below double resolution
double direct_gauss(int j, double t) {
    double acc = 0.0;
    for (int k = 1; k < 100000; ++k) {
        double term = std::pow(double(k), j) * std::exp(-t * double(k) * k);
        acc += term;
        if (k * k * t > 60.0 && term < 1e-25) break;
    }
    return acc;
}

// Gamma(a, x) = int_x^inf u^{a-1} e^{-u} du, substituting u = x + v / (1 - v)
double incomplete_gamma_quadrature(double a, double x) {
    auto f = [&](double v) {
        double u = x + v / (1.0 - v);
        return std::pow(u, a - 1.0) * std::exp(-u) / ((1.0 - v) * (1.0 - v));
    };
    return gauss_legendre(f, 0.0, 1.0 - 1e-12, 400);
}

}  // namespace

TEST_CASE("riemann zeta exact values") {
    CHECK(riemann_zeta(0.0).value == cplx(-0.5));
    CHECK(riemann_zeta(-1.0).value == cplx(-1.0 / 12.0));
    CHECK(riemann_zeta(-2.0).value == cplx(0.0));
    CHECK(std::abs(riemann_zeta(2.0).value - pi * pi / 6.0) < 1e-12);
}

TEST_CASE("riemann zeta against libstdc++ on the real line") {
    for (double s : {-7.5, -3.3, -0.5, 0.25, 0.75, 1.5, 2.5, 4.0, 11.0}) {
        auto v = riemann_zeta(s);
        CHECK(v.value.real() == Approx(std::riemann_zeta(s)).epsilon(1e-12));
        CHECK(std::abs(v.value.imag()) < 1e-14);
        CHECK(v.error_bound >= 0.0);
    }
}

TEST_CASE("riemann zeta pole") {
    try {
        riemann_zeta(1.0);
        FAIL("no pole error");
    } catch (const PoleError& e) {
        CHECK(e.residue == cplx(1.0));
    }
}

TEST_CASE("riemann zeta functional equation") {
    // zeta(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1-s) zeta(1-s)
    for (cplx s : {cplx(-0.5), cplx(0.25, 3.0)}) {
        cplx chi = std::pow(2.0, s) * std::pow(pi, s - 1.0) * std::sin(pi * s / 2.0) * qheat::gamma(1.0 - s);
        cplx lhs = riemann_zeta(s).value, rhs = chi * riemann_zeta(1.0 - s).value;
        CHECK(std::abs(lhs - rhs) < 1e-10);
    }
}

TEST_CASE("hurwitz zeta reduces to riemann and shifts") {
    for (cplx s : {cplx(2.5), cplx(-1.5), cplx(0.3, 2.0)}) {
        CHECK(std::abs(hurwitz_zeta(s, 1.0).value - riemann_zeta(s).value) < 1e-12);
        // zeta(s, a) - zeta(s, a + 1) = a^{-s}
        CHECK(std::abs(hurwitz_zeta(s, 2.5).value - hurwitz_zeta(s, 3.5).value - std::pow(2.5, -s)) < 1e-12);
    }
}

TEST_CASE("dirichlet beta") {
    CHECK(dirichlet_beta(1.0).value.real() == Approx(pi / 4.0).epsilon(1e-12));
    CHECK(dirichlet_beta(0.0).value == cplx(0.5));
    CHECK(std::abs(dirichlet_beta(-1.0).value) < 1e-14);
    // beta(2) is Catalan's constant; compare with a plain alternating sum averaged over two partial sums
    double a = 0.0, prev = 0.0;
    for (int k = 0; k < 200000; ++k) {
        prev = a;
        a += (k % 2 ? -1.0 : 1.0) / std::pow(2.0 * k + 1.0, 2);
    }
    CHECK(dirichlet_beta(2.0).value.real() == Approx(0.5 * (a + prev)).epsilon(1e-11));
}

TEST_CASE("gamma family") {
    for (double x : {0.3, 1.0, 2.5, 7.25, -0.5, -2.5}) CHECK(qheat::gamma(cplx(x)).real() == Approx(std::tgamma(x)).epsilon(1e-13));
    CHECK(rgamma(0.0) == cplx(0.0));
    CHECK(rgamma(-3.0) == cplx(0.0));
    CHECK(std::abs(log_gamma(cplx(0.5, 0.0)) - std::log(std::sqrt(pi))) < 1e-14);
    CHECK(digamma(1.0).real() == Approx(-euler_gamma).epsilon(1e-14));
    // Gamma(z+1) = z Gamma(z) off the real axis
    cplx z(0.7, 2.3);
    CHECK(std::abs(qheat::gamma(z + 1.0) - z * qheat::gamma(z)) < 1e-12 * std::abs(qheat::gamma(z + 1.0)));
}

TEST_CASE("upper incomplete gamma") {
    CHECK(upper_incomplete_gamma(1.0, 2.0).value.real() == Approx(std::exp(-2.0)).epsilon(1e-13));
    CHECK(upper_incomplete_gamma(0.5, 1.0).value.real() == Approx(std::sqrt(pi) * std::erfc(1.0)).epsilon(1e-13));
    CHECK(std::abs(upper_incomplete_gamma(3.0, 1e-4).value.real() - 2.0) < 1e-7);
    for (double a : {0.3, 1.7, 4.5})
        for (double x : {0.2, 1.0, 3.0, 9.0}) {
            double q = incomplete_gamma_quadrature(a, x);
            CHECK(upper_incomplete_gamma(a, x).value.real() == Approx(q).epsilon(1e-10));
        }
    // negative a via the recurrence Gamma(a+1,x) = a Gamma(a,x) + x^a e^{-x}
    for (double a : {-0.5, -1.999, -3.2}) {
        double x = 0.5;
        cplx lhs = upper_incomplete_gamma(a + 1.0, x).value;
        cplx rhs = a * upper_incomplete_gamma(a, x).value + std::pow(x, a) * std::exp(-x);
        CHECK(std::abs(lhs - rhs) < 1e-11 * std::max(1.0, std::abs(lhs)));
    }
    CHECK(incomplete_gamma_bound(0.5, 3.0) >= upper_incomplete_gamma(0.5, 3.0).value.real());
}

TEST_CASE("erf") {
    CHECK(qheat::erf(0.0) == 0.0);
    CHECK(std::abs(qheat::erf(6.0) - 1.0) < 1e-14);
    for (double x : {0.1, 0.5, 1.0, 2.0, 3.7}) {
        CHECK(std::abs(qheat::erf(x) - std::erf(x)) < 1e-14);
        CHECK(qheat::erf(-x) == -qheat::erf(x));
        CHECK(std::abs(qheat::erfc(x) - std::erfc(x)) < 1e-14 * std::max(1.0, std::erfc(x) * 1e2));
    }
    CHECK(qheat::erf(1.0) == Approx(0.8427007929).epsilon(1e-10));
}

TEST_CASE("gauss sums") {
    CHECK(std::abs(gauss_sum(0, 1.0).value.real() - 0.3863186) < 1e-7);
    CHECK(std::abs(gauss_sum(2, 1.0).value.real() - 0.4422545) < 1e-6);
    CHECK(gauss_sum(0, 100.0).value.real() < 2.0 * std::exp(-100.0));
    for (int j = 0; j <= 2; ++j)
        for (double t : {1e-3, 0.05, 0.5, 1.0, 3.0}) {
            auto v = gauss_sum(j, t);
            double d = direct_gauss(j, t);
            CHECK(std::abs(v.value.real() - d) <= v.error_bound + 1e-14 * d);
        }
    CHECK_THROWS_AS(gauss_sum(0, 0.0), DomainError);
    CHECK_THROWS_AS(gauss_sum(1, -1.0), DomainError);
}

TEST_CASE("gauss tail bound dominates the tail") {
    for (int j = 0; j <= 2; ++j)
        for (double t : {0.01, 0.3, 2.0}) {
            int K = int(std::ceil(std::sqrt(j / (2.0 * t)))) + 3;
            double tail = 0.0;
            for (int k = K + 1; k < K + 5000; ++k) tail += std::pow(double(k), j) * std::exp(-t * double(k) * k);
            CHECK(gauss_tail_bound(j, t, K) >= tail);
        }
}

TEST_CASE("theta") {
    CHECK(std::abs(theta_full(0.01).value.real() - 17.7245385090) < 1e-10);
    CHECK(std::abs(theta_full(1.0).value.real() - 1.7726372) < 1e-6);
    for (double t : {0.05, 0.3, 1.0, 4.0}) CHECK(theta_full(t).value.real() > 1.0);
    CHECK(theta_full(40.0).value.real() >= 1.0);
    CHECK_THROWS_AS(theta_full(0.0), DomainError);
}

TEST_CASE("property: theta modularity") {
    for (double t : {0.1, 0.5, 1.0, 2.0, 10.0}) {
        auto a = theta_full(t), b = theta_full(pi * pi / t);
        double rhs = std::sqrt(pi / t) * b.value.real();
        CHECK(std::abs(a.value.real() - rhs) <= a.error_bound + std::sqrt(pi / t) * b.error_bound + 1e-15 * rhs);
    }
}

TEST_CASE("property: theta = 1 + 2 S_0") {
    for (double t : {0.02, 0.2, 1.0, 5.0}) {
        auto th = theta_full(t);
        auto s0 = gauss_sum(0, t);
        CHECK(std::abs(th.value.real() - 1.0 - 2.0 * s0.value.real()) <= th.error_bound + 2.0 * s0.error_bound + 1e-14 * th.value.real());
    }
}

TEST_CASE("property: S_2 = -d/dt S_0") {
    for (double t : {0.3, 1.0, 2.0}) {
        auto fd = [&](double h) { return (gauss_sum(0, t - h).value.real() - gauss_sum(0, t + h).value.real()) / (2.0 * h); };
        const double s2 = gauss_sum(2, t).value.real();
        double e1 = std::abs(s2 - fd(1e-2)), e2 = std::abs(s2 - fd(5e-3));
        // O(h^2): halving h cuts the error by about four
        CHECK(e2 < e1);
        CHECK(e1 / e2 == Approx(4.0).epsilon(0.05));
    }
}

TEST_CASE("property: tighter tolerance stays within the reported bound") {
    PrecisionConfig loose;
    loose.tolerance = 1e-8;
    PrecisionConfig tight;
    tight.tolerance = 1e-16;
    for (double t : {0.01, 0.4, 2.0}) {
        auto a = gauss_sum(1, t, loose), b = gauss_sum(1, t, tight);
        CHECK(std::abs(a.value - b.value) <= a.error_bound + b.error_bound);
    }
    for (cplx s : {cplx(0.5, 4.0), cplx(-2.5), cplx(3.0)}) {
        auto a = riemann_zeta(s, loose), b = riemann_zeta(s, tight);
        CHECK(std::abs(a.value - b.value) <= a.error_bound + b.error_bound + 1e-15);
    }
}

TEST_CASE("bernoulli numbers") {
    CHECK(bernoulli_even(1) == Approx(1.0 / 6.0));
    CHECK(bernoulli_even(2) == Approx(-1.0 / 30.0));
    CHECK(bernoulli_even(6) == Approx(691.0 / 2730.0 * -1.0).epsilon(1e-15));
    // zeta(-(2k-1)) = -B_{2k} / (2k)
    for (int k = 1; k <= 6; ++k) CHECK(riemann_zeta(1.0 - 2.0 * k).value.real() == Approx(-bernoulli_even(k) / (2.0 * k)));
}
