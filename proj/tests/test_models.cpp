#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "qheat/models.hpp"

using namespace qheat;

namespace {

bool has_pole(const std::vector<cplx>& P, cplx z) {
    for (cplx p : P)
        if (std::abs(p - z) < 1e-12) return true;
    return false;
}

std::vector<SpectralModel> sample_models() {
    return {SpectralModel::toeplitz(),       SpectralModel::toeplitz(true),     SpectralModel::heisenberg(1, false),
            SpectralModel::heisenberg(2, true), SpectralModel::nc_torus(2, 1, false), SpectralModel::suq2(1.0),
            SpectralModel::suq2(3.5),        SpectralModel::torus(3)};
}

}  // namespace

TEST_CASE("eigenvalue examples") {
    CHECK(eigenvalue(SpectralModel::toeplitz(), {3, 1}) == cplx(-4.0));
    CHECK(eigenvalue(SpectralModel::toeplitz(true), {3, 1}) == cplx(-2.0));
    CHECK(eigenvalue(SpectralModel::suq2(2.0), {1, 2, 0}) == cplx(-2.0));
    CHECK(eigenvalue(SpectralModel::heisenberg(1, false), {1, 2, 7}) == cplx(-5.0));
    CHECK(eigenvalue(SpectralModel::heisenberg(1, true), {1, 2}) == cplx(-5.0));
    CHECK(eigenvalue(SpectralModel::torus(2), {-2, 3}) == cplx(-13.0));
    // twist coordinate first, it does not enter the eigenvalue
    CHECK(eigenvalue(SpectralModel::nc_torus(1, 1, false), {5, 2}) == cplx(-4.0));
    CHECK_THROWS_AS(eigenvalue(SpectralModel::toeplitz(), {-1, 2}), DomainError);
    CHECK_THROWS_AS(eigenvalue(SpectralModel::torus(2), {1}), DomainError);
}

TEST_CASE("gaussian eigenvalue") {
    GaussianFunctional g;
    g.cov = Eigen::MatrixXd::Identity(2, 2);
    g.driftP = Eigen::VectorXd::Zero(1);
    g.driftQ = Eigen::VectorXd::Zero(1);
    CHECK(gaussian_eigenvalue(g, {1, 1}, 0) == cplx(-1.0));
    g.driftP[0] = 2.0;
    g.driftZ = 0.5;
    CHECK(gaussian_eigenvalue(g, {1, 1}, 4) == cplx(-1.0, 4.0));
    g.cov(0, 1) = 0.3;
    CHECK_THROWS_AS(g.validate(), DomainError);
    g.cov(1, 0) = 0.3;
    g.cov(0, 0) = -1.0;
    CHECK_THROWS_AS(g.validate(), DomainError);
}

TEST_CASE("enumeration counts") {
    for (int R : {0, 1, 3}) CHECK(enumerate(LatticeFamily::quadrant(), R).size() == size_t((R + 1) * (R + 1)));
    CHECK(enumerate(LatticeFamily::mixed_su(), 1).size() == 12u);
    CHECK(enumerate(LatticeFamily::full(3), 2).size() == 125u);
    CHECK(enumerate(LatticeFamily::twisted_torus(1, 1), 1).size() == 9u);
    CHECK(enumerate(LatticeFamily::full(2), -1).empty());
    for (const auto& mu : enumerate(LatticeFamily::mixed_su(), 2)) CHECK(LatticeFamily::mixed_su().contains(mu));
}

TEST_CASE("predicted poles") {
    auto T = SpectralModel::toeplitz();
    auto P = predicted_pole_set(laplacian_operator(T), T, GaugeSpec::radial());
    REQUIRE(P.size() == 1);
    CHECK(P[0] == cplx(-4.0));

    auto H = SpectralModel::heisenberg(1, false);
    auto PH = predicted_pole_set(laplacian_operator(H), H, GaugeSpec::radial());
    CHECK(PH.size() == 1);
    CHECK(has_pole(PH, -5.0));

    auto S = SpectralModel::suq2(1.0);
    auto PS = predicted_pole_set(laplacian_operator(S), S, GaugeSpec::radial(2.0));
    CHECK(PS.size() == 1);
    CHECK(has_pole(PS, -2.5));

    // mixed degrees give one pole per degree
    PolyhomOperator op;
    op.terms = {{Polynomial(1.0), 2.0, {}}, {Polynomial(1.0), 1.0, {}}, {Polynomial(0.0), 4.0, {}}};
    auto PM = predicted_pole_set(op, SpectralModel::torus(2), GaugeSpec::radial());
    CHECK(PM.size() == 2);
    CHECK(has_pole(PM, -4.0));
    CHECK(has_pole(PM, -3.0));
    CHECK_THROWS_AS(predicted_pole_set(op, SpectralModel::torus(2), GaugeSpec::separable({1.0, 1.0})), UnsupportedError);
    CHECK_THROWS_AS(GaugeSpec::radial(0.0).validate(), DomainError);
}

TEST_CASE("property: laplacian operator reproduces the eigenvalue rule") {
    for (const auto& m : sample_models()) {
        auto op = laplacian_operator(m);
        for (const auto& mu : enumerate(m.family, 2)) {
            bool origin = std::all_of(mu.begin(), mu.end(), [](long v) { return v == 0; });
            if (origin) continue;
            CHECK(std::abs(op.value(mu) - eigenvalue(m, mu)) < 1e-12);
        }
    }
}

TEST_CASE("property: eigenvalues are nonpositive") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> u(-40, 40);
    for (const auto& m : sample_models()) {
        for (int it = 0; it < 200; ++it) {
            Point mu(m.dimension());
            auto ax = m.family.axes();
            for (size_t i = 0; i < mu.size(); ++i) mu[i] = ax[i] == Axis::Half ? std::abs(u(rng)) : u(rng);
            cplx e = eigenvalue(m, mu);
            CHECK(e.real() <= 0.0);
            CHECK(e.imag() == 0.0);
        }
    }
}

TEST_CASE("property: quadratic rules scale homogeneously") {
    // lambda(c mu) = c^2 lambda(mu) for every model whose cone is preserved
    for (const auto& m : sample_models()) {
        for (const auto& mu : enumerate(m.family, 2)) {
            Point scaled = mu;
            for (auto& v : scaled) v *= 3;
            CHECK(std::abs(eigenvalue(m, scaled) - 9.0 * eigenvalue(m, mu)) < 1e-9);
        }
    }
}

TEST_CASE("polyhomogeneous operator algebra") {
    Polynomial a(std::vector<cplx>{1.0, 2.0});  // 1 + 2z
    Polynomial b(std::vector<cplx>{0.0, 1.0});  // z
    CHECK((a * b)(3.0) == a(3.0) * b(3.0));
    CHECK(Polynomial(0.0).is_zero());
    CHECK(!a.is_zero());

    auto A = radial_operator(2, 2.0, 2.0);
    auto B = coordinate_squares(2, {0}, 1.0);
    auto AB = A * B;
    for (const auto& mu : enumerate(LatticeFamily::full(2), 3)) {
        if (mu[0] == 0 && mu[1] == 0) continue;
        CHECK(std::abs(AB.value(mu) - A.value(mu) * B.value(mu)) < 1e-9);
    }
    auto sq = signed_quadratic(3, 0, 2, 1.5);
    CHECK(sq.value({4, 9, 1}) == cplx(13.5));
}
