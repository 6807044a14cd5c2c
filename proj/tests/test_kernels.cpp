#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "qheat/kernels.hpp"

using namespace qheat;

TEST_CASE("taper shape") {
    CHECK(taper(0.0) == 1.0);
    CHECK(taper(1.0) == 1.0);
    CHECK(taper(2.0) == 0.0);
    CHECK(taper(5.0) == 0.0);
    double prev = 1.0;
    for (double y = 1.0; y <= 2.0; y += 0.01) {
        double v = taper(y);
        CHECK(v <= prev);
        CHECK(v >= 0.0);
        prev = v;
    }
}

TEST_CASE("tapered power sum: omp matches serial bit for bit") {
    struct Case {
        std::vector<Axis> axes;
        std::vector<int> e;
        cplx s;
        double X;
    };
    std::vector<Case> cases = {
        {{Axis::Full}, {0}, 3.0, 400.0},
        {{Axis::Full, Axis::Full}, {0, 0}, cplx(3.5, 1.0), 300.0},
        {{Axis::Half, Axis::Half}, {1, 1}, 9.0, 200.0},
        {{Axis::Full, Axis::Full, Axis::Full}, {2, 0, 0}, 7.0, 90.0},
        {{Axis::Full, Axis::Half, Axis::Full}, {0, 0, 0}, 4.0, 80.0},
    };
    for (const auto& c : cases) {
        cplx a = tapered_power_sum_serial(c.axes, c.e, c.s, c.X);
        cplx b = tapered_power_sum_omp(c.axes, c.e, c.s, c.X);
        CHECK(a.real() == b.real());
        CHECK(a.imag() == b.imag());
    }
}

TEST_CASE("tapered power sum on Z approaches 2 zeta(s)") {
    // sum_{k != 0} |k|^{-4} taper(k^2/X) + tail -> 2 zeta(4) = pi^4/45
    std::vector<Axis> ax{Axis::Full};
    std::vector<int> e{0};
    for (double X : {400.0, 1600.0}) {
        cplx v = tapered_power_sum_serial(ax, e, 4.0, X) + tapered_tail(ax, e, 4.0, X);
        CHECK(std::abs(v - pi * pi * pi * pi / 45.0) < 1e-8);
    }
}

TEST_CASE("quadratic form sum: omp matches serial bit for bit") {
    Eigen::MatrixXd C(2, 2);
    C << 2.0, 0.5, 0.5, 3.0;
    for (double t : {0.1, 1.0}) {
        double a = quadratic_form_sum_serial(C, t, 30);
        double b = quadratic_form_sum_omp(C, t, 30);
        CHECK(a == b);
    }
    Eigen::MatrixXd I = Eigen::MatrixXd::Identity(4, 4);
    CHECK(quadratic_form_sum_serial(I, 0.7, 8) == quadratic_form_sum_omp(I, 0.7, 8));
}

TEST_CASE("quadratic form sum factorizes for diagonal forms") {
    // diag(2, 4): exp(-k^2 t) exp(-2 l^2 t)
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(2, 2);
    C(0, 0) = 2.0;
    C(1, 1) = 4.0;
    const double t = 0.8;
    auto theta1 = [](double u) {
        double s = 1.0;
        for (int k = 1; k < 60; ++k) s += 2.0 * std::exp(-u * k * k);
        return s;
    };
    CHECK(quadratic_form_sum_omp(C, t, 40) == doctest::Approx(theta1(t) * theta1(2.0 * t)).epsilon(1e-14));
}
