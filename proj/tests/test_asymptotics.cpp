#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "qheat/asymptotics.hpp"
#include "qheat/core.hpp"

using namespace qheat;

namespace {

std::vector<double> log_grid(double hi, double lo, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = hi * std::pow(lo / hi, double(i) / (n - 1));
    return g;
}

}  // namespace

TEST_CASE("default grid") {
    auto g = default_grid();
    REQUIRE(g.size() == 13u);
    CHECK(g.front() == 0.1);
    for (size_t i = 1; i < g.size(); ++i) CHECK(g[i] == g[i - 1] / 2.0);
}

TEST_CASE("pole orders") {
    auto T = trace_of(SpectralModel::toeplitz());
    CHECK(detect_pole_order(T) == doctest::Approx(1.0).epsilon(0.01));
    CHECK(detect_pole_order(T, log_grid(1e-1, 1e-4, 16)) == doctest::Approx(1.0).epsilon(0.01));
    CHECK(detect_pole_order(trace_of(SpectralModel::suq2(1.0))) == doctest::Approx(1.5).epsilon(0.01));
    CHECK(detect_pole_order(trace_of(SpectralModel::torus(2))) == doctest::Approx(1.0).epsilon(0.01));
    double res = -1.0;
    detect_pole_order(trace_of(SpectralModel::torus(2)), default_grid(), 1e-4, &res);
    CHECK(res >= 0.0);
    CHECK(res < 1e-4);
}

TEST_CASE("property: pole order doubles to the heat-trace dimension") {
    struct Case {
        SpectralModel m;
        double dim;
    };
    std::vector<Case> cases = {{SpectralModel::toeplitz(), 2.0},          {SpectralModel::heisenberg(1, false), 2.0},
                               {SpectralModel::heisenberg(2, true), 4.0}, {SpectralModel::nc_torus(1, 1, false), 1.0},
                               {SpectralModel::nc_torus(2, 0, true), 2.0}, {SpectralModel::suq2(2.0), 3.0}};
    for (const auto& c : cases) CHECK(2.0 * detect_pole_order(trace_of(c.m)) == doctest::Approx(c.dim).epsilon(0.01));
}

TEST_CASE("pole order rejects a vanishing trace") {
    TraceFn zero = [](double t) { return HeatTraceValue{t, 0.0, 0.0, "zero"}; };
    CHECK_THROWS_AS(detect_pole_order(zero), ConvergenceError);
    // a trace that changes sign has no power law
    TraceFn wobble = [](double t) { return HeatTraceValue{t, std::sin(40.0 * std::log(t)), 0.0, "wobble"}; };
    CHECK_THROWS_AS(detect_pole_order(wobble), ConvergenceError);
}

TEST_CASE("leading coefficients") {
    double err = 0.0;
    CHECK(leading_coefficient(trace_of(SpectralModel::toeplitz()), 1.0, default_grid(), &err) ==
          doctest::Approx(-2.0 * pi).epsilon(1e-4 / (2.0 * pi)));
    CHECK(err < 1e-4);
    CHECK(std::abs(leading_coefficient(trace_of(SpectralModel::suq2(1.0)), 1.5) + 2.0 * pi * pi) < 1e-3);
    CHECK(std::abs(leading_coefficient(trace_of(SpectralModel::heisenberg(1, false)), 1.0) + 4.0 * pi * pi) < 1e-6);
    CHECK(std::abs(leading_coefficient(trace_of(SpectralModel::torus(1)), 0.5) - 2.0 * pi) < 1e-8);
}

TEST_CASE("heat coefficients") {
    auto tor = heat_coefficients(trace_of(SpectralModel::torus(1)), 0.5, 2, default_grid(), true);
    REQUIRE(tor.coefficients.size() == 3u);
    CHECK(tor.coefficients[0] == doctest::Approx(2.0 * pi).epsilon(1e-9));
    CHECK(tor.coefficients[1] == 0.0);
    CHECK(tor.coefficients[2] == 0.0);
    CHECK(tor.errors[1] < 1e-6);
    CHECK(tor.confident);

    auto su = heat_coefficients(trace_of(SpectralModel::suq2(4.0)), 1.5, 0);
    REQUIRE(su.coefficients.size() == 1u);
    CHECK(std::abs(su.coefficients[0] + pi * pi / 4.0) < 1e-3);

    // the Toeplitz trace is fitted, not assumed pure: the sqrt(t) term is visible
    auto T = heat_coefficients(trace_of(SpectralModel::toeplitz()), 1.0, 2);
    CHECK(std::abs(T.coefficients[0] + 2.0 * pi) < 1e-4);
    CHECK(T.coefficients[1] == doctest::Approx(2.0 * std::pow(pi, 1.5)).epsilon(1e-3));
    CHECK(T.coefficients[2] == doctest::Approx(pi / 3.0).epsilon(1e-2));
}

TEST_CASE("property: poisson exactness for pure theta traces") {
    // theta(t)^N (4 pi t)^{N/2} - (2 pi)^N is below e^{-pi^2/t} scale on the grid
    for (int N : {1, 2}) {
        auto tr = trace_of(SpectralModel::torus(N));
        for (double t : default_grid()) {
            double v = tr(t).value * std::pow(4.0 * pi * t, N / 2.0) - std::pow(2.0 * pi, N);
            CHECK(std::abs(v) <= 1e-12 * std::pow(2.0 * pi, N) + 4.0 * N * std::pow(2.0 * pi, N) * std::exp(-pi * pi / t));
        }
    }
}

TEST_CASE("property: richardson stability") {
    auto tr = trace_of(SpectralModel::suq2(1.0));
    auto g = default_grid();
    double e1 = 0.0, e2 = 0.0;
    double a = leading_coefficient(tr, 1.5, g, &e1);
    auto h = g;
    h.push_back(g.back() / 2.0);
    double b = leading_coefficient(tr, 1.5, h, &e2);
    CHECK(std::abs(a - b) <= e1);
}

TEST_CASE("property: suq2 r-scaling") {
    const double ref = -2.0 * pi * pi;
    for (double r : {0.5, 1.0, 2.0, 4.0}) {
        double a0 = leading_coefficient(trace_of(SpectralModel::suq2(r)), 1.5);
        CHECK(std::abs(a0 * std::pow(r, 1.5) - ref) < 1e-3);
    }
}
