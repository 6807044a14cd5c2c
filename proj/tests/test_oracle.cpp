#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "qheat/heat_traces.hpp"
#include "qheat/oracle.hpp"
#include "qheat/special_functions.hpp"

using namespace qheat;

namespace {

bool agree(const BoundedValue& a, const BoundedValue& b, double tol) {
    return std::abs(a.value - b.value) <= a.error_bound + b.error_bound + tol;
}

}  // namespace

TEST_CASE("toeplitz: gauged sum equals the continued form on the sample grid") {
    for (double z2 : {-1.5, -2.0, -3.0})
        for (double t : {0.5, 1.0, 2.0}) {
            auto d = toeplitz_gauged_sum(0.0, z2, t);
            auto c = toeplitz_continued_form(z2, t);
            auto cmp = compare("toeplitz", {0.0, z2}, t, d, c, 1e-10);
            CHECK(cmp.agree);
            CHECK(d.error_bound < 1e-9);
            CHECK(c.error_bound < 1e-9);
        }
    // complex exponent
    CHECK(agree(toeplitz_gauged_sum(0.0, cplx(-2.0, 1.5), 1.0), toeplitz_continued_form(cplx(-2.0, 1.5), 1.0), 1e-10));
}

TEST_CASE("toeplitz: gauged sum against a plain double sum") {
    // m <= M directly; the m > M tail is theta(t) sum_{m>M} m^{-3} up to O(M^{-4})
    const double t = 0.7;
    const int M = 3000;
    Accumulator acc;
    for (int m = 1; m <= M; ++m)
        for (int n = std::max(1, m - 30); n <= m + 30; ++n)
            acc += std::exp(-t * double(n - m) * (n - m)) / double(n) / (double(m) * m);
    double theta = 1.0;
    for (int k = 1; k <= 30; ++k) theta += 2.0 * std::exp(-t * k * k);
    const double tail = theta * (0.5 / (double(M) * M) - 0.5 / (double(M) * M * M));
    CHECK(std::abs(toeplitz_gauged_sum(-1.0, -2.0, t).value.real() - acc.result() - tail) < 1e-10);
}

TEST_CASE("toeplitz: continued form at zero is the prelimit value") {
    CHECK(std::abs(toeplitz_continued_form(0.0, 1.0).value.real() + 1.2912000) < 1e-6);
    for (double t : {0.3, 1.0, 2.5}) {
        auto c = toeplitz_continued_form(0.0, t);
        auto p = toeplitz_prelimit_value(t);
        CHECK(std::abs(c.value.real() - p.value) <= c.error_bound + p.error_bound + 1e-13);
    }
    CHECK(std::abs(toeplitz_continued_form(0.0, 50.0).value.real() + 0.5) < 1e-12);
    CHECK_THROWS_AS(toeplitz_continued_form(-1.0, 1.0), DomainError);
}

TEST_CASE("toeplitz: large t keeps only the diagonal") {
    auto v = toeplitz_gauged_sum(0.0, -2.0, 40.0);
    CHECK(std::abs(v.value.real() - pi * pi / 6.0) < 1e-12);
}

TEST_CASE("property: toeplitz symmetry and gauge-exponent independence") {
    for (double t : {0.5, 2.0}) {
        auto a = toeplitz_gauged_sum(-3.0, -2.5, t), b = toeplitz_gauged_sum(-2.5, -3.0, t);
        CHECK(agree(a, b, 1e-13));
        // delta only rescales the exponents
        CHECK(toeplitz_gauged_sum(-1.0, -2.0, t).value == toeplitz_gauged_sum(-0.5, -2.0, t, 2.0, 1.0).value);
        CHECK(toeplitz_gauged_sum(0.0, -2.0, t).value == toeplitz_gauged_sum(0.0, -1.0, t, 1.0, 2.0).value);
    }
}

TEST_CASE("toeplitz: domain") {
    CHECK_THROWS_AS(toeplitz_gauged_sum(0.0, -1.0, 1.0), DomainError);
    CHECK_THROWS_AS(toeplitz_gauged_sum(0.5, -2.0, 1.0), DomainError);
    CHECK_THROWS_AS(toeplitz_gauged_sum(0.0, -2.0, 0.0), DomainError);
}

TEST_CASE("suq2: gauged sum equals the continued expression") {
    for (double z2 : {-1.5, -2.0, -3.0})
        for (double t : {0.5, 1.0, 2.0}) {
            std::array<cplx, 3> z{-1.0, z2, -1.0};
            auto d = suq2_gauged_sum(z, 1.0, t);
            auto c = suq2_continued_expression(z, 1.0, t);
            CHECK(agree(d, c, 1e-8));
        }
    // uneven exponents inside the region
    std::array<cplx, 3> z{0.0, -2.0, -1.5};
    CHECK(agree(suq2_gauged_sum(z, 1.0, 1.0), suq2_continued_expression(z, 1.0, 1.0), 1e-8));
    std::array<cplx, 3> w{-1.5, cplx(-2.0, 0.5), 0.0};
    CHECK(agree(suq2_gauged_sum(w, 1.0, 1.0), suq2_continued_expression(w, 1.0, 1.0), 1e-8));
}

TEST_CASE("property: suq2 depends on rt only") {
    std::array<cplx, 3> z{-1.0, -2.0, -1.0};
    CHECK(std::abs(suq2_gauged_sum(z, 2.0, 0.5).value - suq2_gauged_sum(z, 1.0, 1.0).value) < 1e-13);
    CHECK(std::abs(suq2_continued_expression(z, 4.0, 0.25).value - suq2_continued_expression(z, 1.0, 1.0).value) < 1e-13);
}

TEST_CASE("suq2: large t keeps k + l = 0") {
    // sum_m m^{-3} (1 + zeta(2) + sum_{l<m} l^{-2}) up to exp(-40)
    Accumulator acc;
    double partial = 0.0;
    const int M = 100000;
    for (int m = 1; m <= M; ++m) {
        acc += (1.0 + pi * pi / 6.0 + partial) / std::pow(double(m), 3);
        partial += 1.0 / (double(m) * m);
    }
    std::array<cplx, 3> z{-1.0, -3.0, -1.0};
    auto v = suq2_gauged_sum(z, 1.0, 40.0);
    CHECK(std::abs(v.value.real() - acc.result()) < 1e-9);
}

TEST_CASE("suq2: box sums approach the full value") {
    std::array<cplx, 3> z{-1.0, -2.0, -1.0};
    auto full = suq2_gauged_sum(z, 1.0, 1.0);
    cplx b50 = suq2_box_sum(z, 1.0, 1.0, 50), b100 = suq2_box_sum(z, 1.0, 1.0, 100), b200 = suq2_box_sum(z, 1.0, 1.0, 200);
    // the diagonal k = -l tail decays like 1/R, so each doubling halves the gap
    double ratio = std::abs(b200 - b100) / std::abs(b100 - b50);
    CHECK(ratio == doctest::Approx(0.5).epsilon(0.02));
    CHECK(std::abs(full.value - b200) < std::abs(full.value - b100));
    CHECK(std::abs(2.0 * b200 - b100 - full.value) < 1e-3);
}

TEST_CASE("suq2: reduction identities and closed form") {
    auto R = suq2_reduction(1.0, 1.0);
    CHECK(agree(R.pair_sum, R.pair_sum_rhs, 1e-10));
    CHECK(agree(R.weighted_sum, R.weighted_rhs, 1e-10));
    CHECK(std::abs(R.pair_sum.value.real() - 0.0185628) < 1e-7);
    CHECK(std::abs(R.weighted_sum.value.real() - 0.0186866) < 1e-7);
    // independent double sums
    Accumulator p, w;
    for (int k = 1; k < 60; ++k)
        for (int l = 1; l < 60; ++l) {
            double g = std::exp(-double(k + l) * (k + l));
            p += g;
            w += l * g;
        }
    CHECK(std::abs(R.pair_sum.value.real() - p.result()) < 1e-14);
    CHECK(std::abs(R.weighted_sum.value.real() - w.result()) < 1e-14);
    CHECK(agree(R.intermediate, R.closed_form, 1e-10));
    for (double t : {0.2, 1.0, 3.0})
        for (double r : {0.5, 2.0}) {
            auto c = suq2_continued_form(t, r);
            auto h = suq2_gauss_trace(r, t);
            CHECK(std::abs(c.value.real() - h.value) <= c.error_bound + h.error_bound + 1e-12);
        }
    CHECK(std::abs(suq2_continued_form(1.0, 1.0).value.real() - 0.4982122) < 1e-6);
}

TEST_CASE("suq2: domain") {
    CHECK_THROWS_AS(suq2_gauged_sum({0.0, -0.5, 0.0}, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(suq2_gauged_sum({0.0, -2.0, 0.0}, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(suq2_gauged_sum({-1.0, -2.0, -1.0}, 0.0, 1.0), DomainError);
}

TEST_CASE("compare") {
    BoundedValue a{1.0, 1e-3, 0}, b{1.0015, 1e-3, 0};
    CHECK(compare("x", {}, 1.0, a, b, 0.0).agree);
    CHECK_FALSE(compare("x", {}, 1.0, a, BoundedValue{1.01, 1e-3, 0}, 0.0).agree);
}
